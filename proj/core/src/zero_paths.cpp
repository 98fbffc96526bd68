#include "zerotrace/zero_paths.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "zerotrace/errors.hpp"

namespace zerotrace {

namespace {

// Indices of the mixed edges of a triangle: 0 or 2 entries, ascending.
// Labels are +-1, so a triangle is either uniformly labelled or split 2-1.
std::array<int, 2> triangle_mixed_edges(const SymmetricTriangulation& t,
                                        const Labelling& l, int tri, int* count) {
    std::array<int, 2> out{-1, -1};
    *count = 0;
    for (int e : t.triangle_edges[static_cast<std::size_t>(tri)]) {
        const Edge& ed = t.edges[static_cast<std::size_t>(e)];
        if (l.label(ed.a) + l.label(ed.b) == 0) {
            if (*count < 2) out[static_cast<std::size_t>(*count)] = e;
            ++*count;
        }
    }
    if (out[0] > out[1] && *count == 2) std::swap(out[0], out[1]);
    return out;
}

}  // namespace

Vec3 edge_midpoint(const SymmetricTriangulation& t, int e) {
    const Edge& ed = t.edges[static_cast<std::size_t>(e)];
    return chord_midpoint(t.vertices[static_cast<std::size_t>(ed.a)],
                          t.vertices[static_cast<std::size_t>(ed.b)]);
}

std::optional<ZeroSegment> zero_segment(const SymmetricTriangulation& t,
                                        const Labelling& l, int tri) {
    int count = 0;
    auto mixed = triangle_mixed_edges(t, l, tri, &count);
    if (count == 0) return std::nullopt;
    if (count != 2)
        throw std::logic_error("zero_segment: triangle with " + std::to_string(count) +
                               " mixed edges");
    ZeroSegment seg;
    seg.triangle = tri;
    seg.entry_edge = mixed[0];
    seg.exit_edge = mixed[1];
    seg.entry_midpoint = edge_midpoint(t, mixed[0]);
    seg.exit_midpoint = edge_midpoint(t, mixed[1]);
    return seg;
}

std::vector<ZeroPath> trace_paths(const SymmetricTriangulation& t, const Labelling& l) {
    const int f_count = t.triangle_count();
    std::vector<char> is_mixed(static_cast<std::size_t>(f_count), 0);
    for (int i = 0; i < f_count; ++i) {
        const auto& tri = t.triangles[static_cast<std::size_t>(i)];
        int s = l.label(tri[0]) + l.label(tri[1]) + l.label(tri[2]);
        is_mixed[static_cast<std::size_t>(i)] = (s != 3 && s != -3);
    }

    std::vector<char> visited(static_cast<std::size_t>(f_count), 0);
    std::vector<ZeroPath> paths;

    for (int start = 0; start < f_count; ++start) {
        if (!is_mixed[static_cast<std::size_t>(start)] ||
            visited[static_cast<std::size_t>(start)])
            continue;

        ZeroPath path;
        int count = 0;
        auto start_edges = triangle_mixed_edges(t, l, start, &count);
        if (count != 2)
            throw std::logic_error("trace_paths: mixed triangle without 2 mixed edges");

        // Leave the start triangle across its smaller-index mixed edge; the
        // larger one closes the cycle.
        visited[static_cast<std::size_t>(start)] = 1;
        path.triangles.push_back(start);
        path.edges.push_back(start_edges[0]);

        int entry = start_edges[0];
        int cur = t.other_triangle(start_edges[0], start);
        while (cur != start) {
            if (cur < 0 || visited[static_cast<std::size_t>(cur)])
                throw std::logic_error("trace_paths: walk left the mixed region");
            visited[static_cast<std::size_t>(cur)] = 1;
            auto mixed = triangle_mixed_edges(t, l, cur, &count);
            if (count != 2)
                throw std::logic_error("trace_paths: mixed triangle without 2 mixed edges");
            int exit = mixed[0] == entry ? mixed[1] : mixed[0];
            path.triangles.push_back(cur);
            path.edges.push_back(exit);
            entry = exit;
            cur = t.other_triangle(exit, cur);
        }
        if (path.edges.back() != start_edges[1])
            throw std::logic_error("trace_paths: cycle closed on an unexpected edge");

        path.midpoints.reserve(path.edges.size());
        for (int e : path.edges) path.midpoints.push_back(edge_midpoint(t, e));
        paths.push_back(std::move(path));
    }
    return paths;
}

bool is_invariant(const SymmetricTriangulation& t, const ZeroPath& path) {
    std::vector<int> sorted = path.edges;
    std::sort(sorted.begin(), sorted.end());
    for (int e : path.edges) {
        int ae = t.antipodal_edge(e);
        if (ae < 0 || !std::binary_search(sorted.begin(), sorted.end(), ae)) return false;
    }
    return true;
}

CertificationReport certify_paths(const SymmetricTriangulation& t,
                                  const std::vector<ZeroPath>& paths) {
    CertificationReport rep;
    rep.path_count = static_cast<int>(paths.size());
    for (int i = 0; i < rep.path_count; ++i)
        if (is_invariant(t, paths[static_cast<std::size_t>(i)]))
            rep.invariant_indices.push_back(i);

    // Non-invariant paths must come in antipodal pairs: the edge set of one
    // maps exactly onto the edge set of the other.
    std::vector<std::vector<int>> sorted_edges(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        sorted_edges[i] = paths[i].edges;
        std::sort(sorted_edges[i].begin(), sorted_edges[i].end());
    }
    std::vector<char> paired(paths.size(), 0);
    for (int i : rep.invariant_indices) paired[static_cast<std::size_t>(i)] = 1;

    rep.pairing_ok = true;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (paired[i]) continue;
        std::vector<int> image;
        image.reserve(paths[i].edges.size());
        bool image_ok = true;
        for (int e : paths[i].edges) {
            int ae = t.antipodal_edge(e);
            if (ae < 0) {
                image_ok = false;
                break;
            }
            image.push_back(ae);
        }
        if (!image_ok) {
            rep.pairing_ok = false;
            break;
        }
        std::sort(image.begin(), image.end());
        int partner = -1;
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
            if (!paired[j] && sorted_edges[j] == image) {
                partner = static_cast<int>(j);
                break;
            }
        }
        if (partner < 0) {
            rep.pairing_ok = false;
            break;
        }
        paired[i] = 1;
        paired[static_cast<std::size_t>(partner)] = 1;
        rep.pairs.emplace_back(static_cast<int>(i), partner);
    }
    return rep;
}

TraceResult trace_all(const SymmetricTriangulation& t, const Labelling& l) {
    std::vector<ZeroPath> paths = trace_paths(t, l);
    CertificationReport rep = certify_paths(t, paths);

    if (rep.invariant_indices.size() != 1)
        throw TheoremViolation("trace_all: " + std::to_string(rep.invariant_indices.size()) +
                               " invariant paths, expected exactly 1");
    if (rep.path_count % 2 == 0)
        throw TheoremViolation("trace_all: even path count " +
                               std::to_string(rep.path_count));
    if (!rep.pairing_ok)
        throw TheoremViolation("trace_all: non-invariant paths do not pair antipodally");

    TraceResult result;
    result.paths = std::move(paths);
    result.invariant_index = rep.invariant_indices[0];
    result.pairs = std::move(rep.pairs);
    return result;
}

int antipodal_shift_index(const SymmetricTriangulation& t, const ZeroPath& path) {
    if (!is_invariant(t, path))
        throw std::invalid_argument("antipodal_shift_index: path is not invariant");
    const int n = static_cast<int>(path.edges.size());
    if (n == 0 || n % 2 != 0)
        throw NoShiftStructure("antipodal_shift_index: invariant path of odd length " +
                               std::to_string(n));
    const int q = n / 2;
    for (int k = 0; k < n; ++k) {
        int ae = t.antipodal_edge(path.edges[static_cast<std::size_t>(k)]);
        if (ae != path.edges[static_cast<std::size_t>((k + q) % n)])
            throw NoShiftStructure(
                "antipodal_shift_index: involution is not the half-length shift");
    }
    return q;
}

std::vector<std::vector<int>> mixed_partition_union_find(const SymmetricTriangulation& t,
                                                         const Labelling& l) {
    const int f_count = t.triangle_count();
    std::vector<int> parent(static_cast<std::size_t>(f_count));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&parent, &find](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    };

    for (int e = 0; e < t.edge_count(); ++e) {
        const Edge& ed = t.edges[static_cast<std::size_t>(e)];
        if (l.label(ed.a) + l.label(ed.b) != 0) continue;
        if (ed.tri_count == 2) unite(ed.tris[0], ed.tris[1]);
    }

    std::vector<std::vector<int>> groups;
    std::vector<int> group_of(static_cast<std::size_t>(f_count), -1);
    for (int i = 0; i < f_count; ++i) {
        const auto& tri = t.triangles[static_cast<std::size_t>(i)];
        int s = l.label(tri[0]) + l.label(tri[1]) + l.label(tri[2]);
        if (s == 3 || s == -3) continue;
        int root = find(i);
        if (group_of[static_cast<std::size_t>(root)] < 0) {
            group_of[static_cast<std::size_t>(root)] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(group_of[static_cast<std::size_t>(root)])].push_back(i);
    }
    return groups;
}

}  // namespace zerotrace
