#include <algorithm>
#include <cmath>
#include <set>

#include <doctest.h>

#include "zerotrace/errors.hpp"
#include "zerotrace/labelling.hpp"
#include "zerotrace/sphere_mesh.hpp"
#include "zerotrace/zero_paths.hpp"

using namespace zerotrace;

namespace {

Labelling standard_octahedron_labelling() {
    return Labelling{{1, -1, 1, -1, 1, -1}};
}

// Midpoint of a mixed edge as a barycentric point of an incident triangle.
BarycentricPoint midpoint_barycentric(const SymmetricTriangulation& t, int edge, int tri) {
    BarycentricPoint bp{tri, {0, 0, 0}};
    const auto& tv = t.triangles[tri];
    for (int k = 0; k < 3; ++k)
        if (tv[k] == t.edges[edge].a || tv[k] == t.edges[edge].b) bp.weights[k] = 0.5;
    return bp;
}

// Sorted triangle sets of a path collection, for partition comparison.
std::vector<std::vector<int>> normalized_partition(const std::vector<ZeroPath>& paths) {
    std::vector<std::vector<int>> out;
    out.reserve(paths.size());
    for (const ZeroPath& p : paths) {
        std::vector<int> tris = p.triangles;
        std::sort(tris.begin(), tris.end());
        out.push_back(std::move(tris));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Signed side of vertex v relative to the zero segment within triangle tri.
double side_of_segment(const SymmetricTriangulation& t, const ZeroSegment& seg,
                       const Vec3& v) {
    const auto& tv = t.triangles[seg.triangle];
    Vec3 a = t.vertices[tv[0]], b = t.vertices[tv[1]], c = t.vertices[tv[2]];
    Vec3 plane_normal = cross(b - a, c - a);
    Vec3 in_plane_normal = cross(plane_normal, seg.exit_midpoint - seg.entry_midpoint);
    return dot(in_plane_normal, v - seg.entry_midpoint);
}

}  // namespace

TEST_SUITE("zero_paths") {

TEST_CASE("zero_segment") {
    SymmetricTriangulation t = base_octahedron();
    Labelling l = standard_octahedron_labelling();

    // Face 0 is (e1, e2, e3), all labelled +1.
    CHECK(!zero_segment(t, l, 0).has_value());

    // Face 1 is (e1, e2, -e3) with labels (+1, +1, -1): the two mixed edges
    // are the ones incident to the minority vertex -e3.
    auto seg = zero_segment(t, l, 1);
    REQUIRE(seg.has_value());
    std::set<std::pair<int, int>> seg_edges{
        {t.edges[seg->entry_edge].a, t.edges[seg->entry_edge].b},
        {t.edges[seg->exit_edge].a, t.edges[seg->exit_edge].b}};
    std::set<std::pair<int, int>> expected{{0, 5}, {2, 5}};
    CHECK(seg_edges == expected);

    CHECK(eval_simplicial(t, l, midpoint_barycentric(t, seg->entry_edge, 1)) == 0.0);
    CHECK(eval_simplicial(t, l, midpoint_barycentric(t, seg->exit_edge, 1)) == 0.0);

    // Midpoints are exact chord averages, not renormalized.
    const Edge& entry = t.edges[seg->entry_edge];
    CHECK(seg->entry_midpoint ==
          chord_midpoint(t.vertices[entry.a], t.vertices[entry.b]));
}

TEST_CASE("octahedron canonical trace") {
    SymmetricTriangulation t = base_octahedron();
    Labelling l = standard_octahedron_labelling();

    // Oracle by enumeration: faces 1..6 are mixed (all but (+,+,+) and
    // (-,-,-)), and the six mixed-edge midpoints form one hexagonal band.
    int mixed_count = 0;
    for (int i = 0; i < 8; ++i) {
        const auto& tri = t.triangles[i];
        int s = l.label(tri[0]) + l.label(tri[1]) + l.label(tri[2]);
        if (s != 3 && s != -3) ++mixed_count;
    }
    CHECK(mixed_count == 6);

    TraceResult result = trace_all(t, l);
    REQUIRE(result.paths.size() == 1);
    CHECK(result.invariant_index == 0);
    CHECK(result.pairs.empty());

    const ZeroPath& path = result.paths[0];
    CHECK(path.length() == 6);
    CHECK(path.midpoints.size() == 6);
    CHECK(is_invariant(t, path));
    CHECK(antipodal_shift_index(t, path) == 3);

    // The six midpoints are exactly the midpoints of the six mixed edges.
    std::set<std::pair<int, int>> visited_edges;
    for (int e : path.edges) visited_edges.insert({t.edges[e].a, t.edges[e].b});
    std::set<std::pair<int, int>> expected{{0, 3}, {0, 5}, {1, 2}, {1, 4}, {2, 5}, {3, 4}};
    CHECK(visited_edges == expected);

    // Midpoints of antipodal edges are exact negations, shifted by q = 3.
    for (int k = 0; k < 6; ++k)
        CHECK(path.midpoints[(k + 3) % 6] == -path.midpoints[k]);
}

TEST_CASE("trace is deterministic") {
    SymmetricTriangulation t = build_refined(2);
    Labelling l = random_antisymmetric_labelling(t, 11);
    TraceResult a = trace_all(t, l);
    TraceResult b = trace_all(t, l);
    REQUIRE(a.paths.size() == b.paths.size());
    CHECK(a.invariant_index == b.invariant_index);
    CHECK(a.pairs == b.pairs);
    for (std::size_t i = 0; i < a.paths.size(); ++i) {
        CHECK(a.paths[i].triangles == b.paths[i].triangles);
        CHECK(a.paths[i].edges == b.paths[i].edges);
    }
}

TEST_CASE("equator band trace on a refined mesh") {
    SymmetricTriangulation t = build_refined(4);
    ScalarField g = [](const Vec3& p) { return 2 * p.z; };
    SignLabelResult labelled = label_by_sign(t, g, 1e-9, 42);
    TraceResult result = trace_all(labelled.mesh, labelled.labelling);
    CHECK(result.paths.size() == 1);

    // Midpoints straddle the equator within half the mesh diameter.
    double bound = mesh_diameter(labelled.mesh) / 2;
    for (const Vec3& m : result.paths[0].midpoints) CHECK(std::abs(m.z) <= bound);

    // Half-length shift of the midpoint cycle, exact negation.
    const ZeroPath& path = result.paths[0];
    int q = antipodal_shift_index(labelled.mesh, path);
    int n = path.length();
    CHECK(n == 2 * q);
    for (int k = 0; k < n; ++k)
        CHECK(path.midpoints[(k + q) % n] == -path.midpoints[k]);
}

TEST_CASE("fuzzing: parity, uniqueness, pairing and the partition oracle") {
    SymmetricTriangulation t = build_refined(3);
    int multi_path_runs = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        Labelling l = random_antisymmetric_labelling(t, seed);
        std::vector<ZeroPath> paths = trace_paths(t, l);
        CertificationReport rep = certify_paths(t, paths);

        CHECK(rep.path_count % 2 == 1);
        CHECK(rep.invariant_indices.size() == 1);
        CHECK(rep.pairing_ok);
        if (rep.path_count > 1) ++multi_path_runs;

        // Paired paths have equal lengths and are mutually non-invariant.
        for (const auto& [i, j] : rep.pairs) {
            CHECK(paths[i].length() == paths[j].length());
            CHECK(!is_invariant(t, paths[i]));
            CHECK(!is_invariant(t, paths[j]));
        }

        // Partition of mixed triangles matches the union-find oracle.
        CHECK(normalized_partition(paths) == mixed_partition_union_find(t, l));

        // Paths are simple: no triangle or edge appears twice anywhere.
        std::set<int> seen_tris, seen_edges;
        for (const ZeroPath& p : paths) {
            for (int tri : p.triangles) CHECK(seen_tris.insert(tri).second);
            for (int e : p.edges) CHECK(seen_edges.insert(e).second);
        }

        // trace_all agrees and does not throw on valid labellings.
        TraceResult result = trace_all(t, l);
        CHECK(result.paths.size() == static_cast<std::size_t>(rep.path_count));
    }
    // The sample must actually exercise the pairing logic.
    CHECK(multi_path_runs > 0);
}

TEST_CASE("consecutive midpoints share a triangle and evaluate to zero") {
    SymmetricTriangulation t = build_refined(2);
    Labelling l = random_antisymmetric_labelling(t, 5);
    std::vector<ZeroPath> paths = trace_paths(t, l);
    for (const ZeroPath& p : paths) {
        int n = p.length();
        for (int k = 0; k < n; ++k) {
            // edges[k-1] and edges[k] are both edges of triangles[k].
            int tri = p.triangles[k];
            int entry = p.edges[(k + n - 1) % n];
            int exit = p.edges[k];
            const auto& te = t.triangle_edges[tri];
            CHECK(std::count(te.begin(), te.end(), entry) == 1);
            CHECK(std::count(te.begin(), te.end(), exit) == 1);
            CHECK(eval_simplicial(t, l, midpoint_barycentric(t, exit, tri)) == 0.0);
        }
    }
}

TEST_CASE("side separation: minority vertex is alone on its side") {
    SymmetricTriangulation t = build_refined(2);
    for (std::uint64_t seed = 40; seed < 44; ++seed) {
        Labelling l = random_antisymmetric_labelling(t, seed);
        std::vector<ZeroPath> paths = trace_paths(t, l);
        for (const ZeroPath& p : paths) {
            for (int tri : p.triangles) {
                auto seg = zero_segment(t, l, tri);
                REQUIRE(seg.has_value());
                const auto& tv = t.triangles[tri];
                int sum = l.label(tv[0]) + l.label(tv[1]) + l.label(tv[2]);
                int minority_label = sum > 0 ? -1 : 1;
                double minority_side = 0, majority_lo = 0, majority_hi = 0;
                for (int k = 0; k < 3; ++k) {
                    double s = side_of_segment(t, *seg, t.vertices[tv[k]]);
                    if (l.label(tv[k]) == minority_label)
                        minority_side = s;
                    else if (majority_lo == 0)
                        majority_lo = s;
                    else
                        majority_hi = s;
                }
                CHECK(minority_side * majority_lo < 0);
                CHECK(minority_side * majority_hi < 0);
            }
        }
    }
}

TEST_CASE("antipodal_shift_index rejects non-invariant paths") {
    SymmetricTriangulation t = build_refined(3);
    // Find a labelling with several paths and test a paired one.
    for (std::uint64_t seed = 0;; ++seed) {
        REQUIRE(seed < 500);
        Labelling l = random_antisymmetric_labelling(t, seed);
        TraceResult result = trace_all(t, l);
        if (result.pairs.empty()) continue;
        const ZeroPath& paired = result.paths[result.pairs[0].first];
        CHECK(!is_invariant(t, paired));
        CHECK_THROWS_AS(antipodal_shift_index(t, paired), std::invalid_argument);
        break;
    }
}

TEST_CASE("certify_paths flags a synthetic broken collection") {
    SymmetricTriangulation t = base_octahedron();
    Labelling l = standard_octahedron_labelling();
    std::vector<ZeroPath> paths = trace_paths(t, l);
    REQUIRE(paths.size() == 1);

    // Duplicating the invariant path yields two invariant paths.
    paths.push_back(paths[0]);
    CertificationReport rep = certify_paths(t, paths);
    CHECK(rep.invariant_indices.size() == 2);
}

}  // TEST_SUITE
