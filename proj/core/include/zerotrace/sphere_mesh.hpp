#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zerotrace/vec3.hpp"

namespace zerotrace {

/// Undirected mesh edge; endpoint indices satisfy a < b.
struct Edge {
    int a = -1;
    int b = -1;
    std::array<int, 2> tris{-1, -1};
    int tri_count = 0;
};

struct Violation {
    std::string rule;
    long index = -1;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(std::string rule, long index) {
        ok = false;
        violations.push_back({std::move(rule), index});
    }
    bool has(std::string_view rule) const {
        for (const auto& v : violations)
            if (v.rule == rule) return true;
        return false;
    }
};

/// Finite triangulation of the unit sphere closed under the antipodal map.
///
/// The vertex pairing is structural: position(antipode(i)) stores the exact
/// componentwise negation of position(i), so antipodal symmetry holds without
/// tolerances. Values are immutable after construction; all operations below
/// are pure functions.
struct SymmetricTriangulation {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<int> antipode;

    // Derived connectivity, rebuilt by finalize().
    std::vector<Edge> edges;
    std::vector<std::array<int, 3>> triangle_edges;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
    long euler_characteristic() const {
        return static_cast<long>(vertex_count()) - edge_count() + triangle_count();
    }

    /// Index of the edge {u, v}, or -1 if absent.
    int edge_index(int u, int v) const;

    /// Image of an edge under the vertex pairing, or -1 if absent.
    int antipodal_edge(int e) const;

    /// The triangle on the other side of edge e, or -1.
    int other_triangle(int e, int tri) const;

    /// Rebuild edges, triangle_edges and the edge lookup from the triangle list.
    void finalize();

  private:
    std::unordered_map<std::uint64_t, int> edge_lookup_;
};

/// Regular octahedron with vertices at +-e1, +-e2, +-e3.
SymmetricTriangulation base_octahedron();

/// 1-to-4 split of every triangle at edge midpoints, new vertices projected
/// radially to the sphere. Satisfies V' = V + E, E' = 2E + 3F, F' = 4F.
SymmetricTriangulation subdivide_once(const SymmetricTriangulation& t);

/// base_octahedron() subdivided `levels` times.
SymmetricTriangulation build_refined(int levels);

/// Maximum allowed refinement level: ZERO_TRACER_MAX_LEVEL if set, else 10.
int refinement_level_cap();

/// Checks every structural and geometric invariant; violations are data,
/// not errors.
ValidationReport validate(const SymmetricTriangulation& t);

/// Longest edge chord length.
double mesh_diameter(const SymmetricTriangulation& t);

/// Applies a rotation to every vertex position. Connectivity and the
/// antipode map are unchanged; symmetry is preserved because negation
/// commutes with every rotation.
SymmetricTriangulation rotate_mesh(const SymmetricTriangulation& t, const Mat3& r);

}  // namespace zerotrace
