#include "zerotrace/sphere_mesh.hpp"

#include <cstdlib>
#include <queue>
#include <set>
#include <string>

#include "zerotrace/errors.hpp"

namespace zerotrace {

namespace {

std::uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    return 0.5 * norm(cross(b - a, c - a));
}

}  // namespace

int SymmetricTriangulation::edge_index(int u, int v) const {
    auto it = edge_lookup_.find(edge_key(u, v));
    return it == edge_lookup_.end() ? -1 : it->second;
}

int SymmetricTriangulation::antipodal_edge(int e) const {
    const Edge& ed = edges[static_cast<std::size_t>(e)];
    return edge_index(antipode[ed.a], antipode[ed.b]);
}

int SymmetricTriangulation::other_triangle(int e, int tri) const {
    const Edge& ed = edges[static_cast<std::size_t>(e)];
    if (ed.tri_count != 2) return -1;
    return ed.tris[0] == tri ? ed.tris[1] : ed.tris[0];
}

void SymmetricTriangulation::finalize() {
    edges.clear();
    triangle_edges.assign(triangles.size(), {-1, -1, -1});
    edge_lookup_.clear();
    edge_lookup_.reserve(triangles.size() * 2);

    for (int t = 0; t < triangle_count(); ++t) {
        const auto& tri = triangles[static_cast<std::size_t>(t)];
        for (int k = 0; k < 3; ++k) {
            int u = tri[static_cast<std::size_t>(k)];
            int v = tri[static_cast<std::size_t>((k + 1) % 3)];
            if (u > v) std::swap(u, v);
            auto [it, inserted] = edge_lookup_.try_emplace(edge_key(u, v), edge_count());
            if (inserted) edges.push_back({u, v, {-1, -1}, 0});
            Edge& ed = edges[static_cast<std::size_t>(it->second)];
            if (ed.tri_count < 2) ed.tris[static_cast<std::size_t>(ed.tri_count)] = t;
            ++ed.tri_count;
            triangle_edges[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] =
                it->second;
        }
    }
}

SymmetricTriangulation base_octahedron() {
    SymmetricTriangulation t;
    t.vertices = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    t.antipode = {1, 0, 3, 2, 5, 4};
    // One face per octant: the x, y and z axis vertex with the octant's signs.
    for (int sx = 0; sx < 2; ++sx)
        for (int sy = 0; sy < 2; ++sy)
            for (int sz = 0; sz < 2; ++sz)
                t.triangles.push_back({0 + sx, 2 + sy, 4 + sz});
    t.finalize();
    return t;
}

SymmetricTriangulation subdivide_once(const SymmetricTriangulation& t) {
    ValidationReport rep = validate(t);
    if (!rep.ok)
        throw InvalidMesh("subdivide_once: input mesh failed validation (" +
                          rep.violations.front().rule + ")");

    SymmetricTriangulation out;
    out.vertices = t.vertices;
    out.antipode = t.antipode;

    // One new vertex per edge. Each antipodal edge pair is processed once:
    // the canonical midpoint is normalized to the sphere and its partner is
    // stored as the exact negation.
    std::vector<int> mid(static_cast<std::size_t>(t.edge_count()), -1);
    for (int e = 0; e < t.edge_count(); ++e) {
        if (mid[static_cast<std::size_t>(e)] != -1) continue;
        int ae = t.antipodal_edge(e);
        if (ae < 0)
            throw InvalidMesh("subdivide_once: edge set not closed under the antipodal map");
        if (ae == e)
            throw InvalidMesh("subdivide_once: edge joins antipodal vertices");
        const Edge& ed = t.edges[static_cast<std::size_t>(e)];
        Vec3 m = normalized(chord_midpoint(t.vertices[static_cast<std::size_t>(ed.a)],
                                           t.vertices[static_cast<std::size_t>(ed.b)]));
        int n0 = static_cast<int>(out.vertices.size());
        out.vertices.push_back(m);
        out.vertices.push_back(-m);
        out.antipode.push_back(n0 + 1);
        out.antipode.push_back(n0);
        mid[static_cast<std::size_t>(e)] = n0;
        mid[static_cast<std::size_t>(ae)] = n0 + 1;
    }

    out.triangles.reserve(t.triangles.size() * 4);
    for (int ti = 0; ti < t.triangle_count(); ++ti) {
        const auto& tri = t.triangles[static_cast<std::size_t>(ti)];
        int a = tri[0], b = tri[1], c = tri[2];
        int mab = mid[static_cast<std::size_t>(t.edge_index(a, b))];
        int mbc = mid[static_cast<std::size_t>(t.edge_index(b, c))];
        int mca = mid[static_cast<std::size_t>(t.edge_index(c, a))];
        out.triangles.push_back({a, mab, mca});
        out.triangles.push_back({b, mbc, mab});
        out.triangles.push_back({c, mca, mbc});
        out.triangles.push_back({mab, mbc, mca});
    }
    out.finalize();
    return out;
}

int refinement_level_cap() {
    constexpr int kDefaultCap = 10;
    const char* env = std::getenv("ZERO_TRACER_MAX_LEVEL");
    if (env == nullptr || *env == '\0') return kDefaultCap;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0 || v > 30) return kDefaultCap;
    return static_cast<int>(v);
}

SymmetricTriangulation build_refined(int levels) {
    int cap = refinement_level_cap();
    if (levels < 0 || levels > cap)
        throw LevelTooLarge("build_refined: level " + std::to_string(levels) +
                            " outside [0, " + std::to_string(cap) + "]");
    SymmetricTriangulation t = base_octahedron();
    for (int i = 0; i < levels; ++i) t = subdivide_once(t);
    return t;
}

ValidationReport validate(const SymmetricTriangulation& t) {
    ValidationReport rep;
    const int v_count = t.vertex_count();
    const int f_count = t.triangle_count();

    if (static_cast<int>(t.antipode.size()) != v_count) {
        rep.add("antipode_size", static_cast<long>(t.antipode.size()));
        return rep;
    }
    bool indices_ok = true;
    for (int i = 0; i < f_count; ++i)
        for (int k = 0; k < 3; ++k) {
            int v = t.triangles[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            if (v < 0 || v >= v_count) {
                rep.add("index_range", i);
                indices_ok = false;
            }
        }
    for (int i = 0; i < v_count; ++i) {
        int a = t.antipode[static_cast<std::size_t>(i)];
        if (a < 0 || a >= v_count) {
            rep.add("index_range", i);
            indices_ok = false;
        }
    }
    if (!indices_ok) return rep;

    for (int i = 0; i < v_count; ++i) {
        int a = t.antipode[static_cast<std::size_t>(i)];
        if (a == i || t.antipode[static_cast<std::size_t>(a)] != i)
            rep.add("antipode_involution", i);
    }
    for (int i = 0; i < v_count; ++i) {
        const Vec3& p = t.vertices[static_cast<std::size_t>(i)];
        const Vec3& q = t.vertices[static_cast<std::size_t>(t.antipode[static_cast<std::size_t>(i)])];
        if (!(q == -p)) rep.add("antipode_position", i);
    }
    for (int i = 0; i < v_count; ++i) {
        if (std::abs(norm(t.vertices[static_cast<std::size_t>(i)]) - 1.0) > 1e-12)
            rep.add("vertex_norm", i);
    }
    for (int i = 0; i < f_count; ++i) {
        const auto& tri = t.triangles[static_cast<std::size_t>(i)];
        if (triangle_area(t.vertices[static_cast<std::size_t>(tri[0])],
                          t.vertices[static_cast<std::size_t>(tri[1])],
                          t.vertices[static_cast<std::size_t>(tri[2])]) < 1e-14)
            rep.add("degenerate_triangle", i);
    }

    // Triangle set closed under the antipodal map, compared as sorted triples.
    std::set<std::array<int, 3>> triple_set;
    for (const auto& tri : t.triangles) {
        std::array<int, 3> s = tri;
        std::sort(s.begin(), s.end());
        triple_set.insert(s);
    }
    for (int i = 0; i < f_count; ++i) {
        const auto& tri = t.triangles[static_cast<std::size_t>(i)];
        std::array<int, 3> img{t.antipode[static_cast<std::size_t>(tri[0])],
                               t.antipode[static_cast<std::size_t>(tri[1])],
                               t.antipode[static_cast<std::size_t>(tri[2])]};
        std::sort(img.begin(), img.end());
        if (triple_set.find(img) == triple_set.end()) rep.add("triangle_closure", i);
    }

    // Edge incidence, connectivity and Euler characteristic are checked on a
    // locally built edge map so they do not depend on finalize().
    std::unordered_map<std::uint64_t, int> incidence;
    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(v_count));
    for (const auto& tri : t.triangles)
        for (int k = 0; k < 3; ++k) {
            int u = tri[static_cast<std::size_t>(k)];
            int v = tri[static_cast<std::size_t>((k + 1) % 3)];
            auto [it, inserted] = incidence.try_emplace(edge_key(u, v), 0);
            if (inserted) {
                adjacency[static_cast<std::size_t>(u)].push_back(v);
                adjacency[static_cast<std::size_t>(v)].push_back(u);
            }
            ++it->second;
        }
    for (const auto& [key, count] : incidence) {
        if (count != 2) rep.add("edge_incidence", static_cast<long>(key >> 32));
    }
    if (v_count > 0) {
        std::vector<char> seen(static_cast<std::size_t>(v_count), 0);
        std::queue<int> work;
        work.push(0);
        seen[0] = 1;
        int reached = 1;
        while (!work.empty()) {
            int u = work.front();
            work.pop();
            for (int v : adjacency[static_cast<std::size_t>(u)])
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    ++reached;
                    work.push(v);
                }
        }
        if (reached != v_count) {
            int first_unreached = 0;
            while (seen[static_cast<std::size_t>(first_unreached)]) ++first_unreached;
            rep.add("connectivity", first_unreached);
        }
    }
    long euler = static_cast<long>(v_count) - static_cast<long>(incidence.size()) + f_count;
    if (euler != 2) rep.add("euler", euler);

    return rep;
}

double mesh_diameter(const SymmetricTriangulation& t) {
    double best = 0.0;
    for (const Edge& e : t.edges) {
        double d = norm(t.vertices[static_cast<std::size_t>(e.a)] -
                        t.vertices[static_cast<std::size_t>(e.b)]);
        if (d > best) best = d;
    }
    return best;
}

SymmetricTriangulation rotate_mesh(const SymmetricTriangulation& t, const Mat3& r) {
    if (orthogonality_defect(r) > 1e-10 || std::abs(r.determinant() - 1.0) > 1e-10)
        throw NotARotation("rotate_mesh: matrix is not a proper rotation");
    SymmetricTriangulation out = t;
    for (int i = 0; i < t.vertex_count(); ++i) {
        int a = t.antipode[static_cast<std::size_t>(i)];
        if (i > a) continue;
        Vec3 p = r * t.vertices[static_cast<std::size_t>(i)];
        out.vertices[static_cast<std::size_t>(i)] = p;
        out.vertices[static_cast<std::size_t>(a)] = -p;
    }
    return out;
}

}  // namespace zerotrace
