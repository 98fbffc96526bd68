#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zerotrace/labelling.hpp"
#include "zerotrace/sphere_mesh.hpp"

namespace zerotrace {

/// The unique segment inside a mixed triangle on which the simplicial
/// extension vanishes. Its endpoints are exact chord midpoints of the two
/// mixed edges; they are not re-normalized to the sphere.
struct ZeroSegment {
    int triangle = -1;
    int entry_edge = -1;
    int exit_edge = -1;
    Vec3 entry_midpoint;
    Vec3 exit_midpoint;
};

/// One closed polygonal component of the zero level set.
///
/// triangles[k] is the k-th triangle of the chain and edges[k] is the mixed
/// edge crossed when leaving it, so edges[k] is shared between triangles[k]
/// and triangles[k+1 mod n]. midpoints[k] is the chord midpoint of edges[k].
struct ZeroPath {
    std::vector<int> triangles;
    std::vector<int> edges;
    std::vector<Vec3> midpoints;

    int length() const { return static_cast<int>(triangles.size()); }
};

struct TraceResult {
    std::vector<ZeroPath> paths;
    int invariant_index = -1;
    std::vector<std::pair<int, int>> pairs;  // antipodal partners among the rest
};

/// Structure report used by trace_all and by the fuzzing harness.
struct CertificationReport {
    int path_count = 0;
    std::vector<int> invariant_indices;
    bool pairing_ok = false;
    std::vector<std::pair<int, int>> pairs;
};

/// None if the triangle's labels are all equal, otherwise the zero segment
/// joining the midpoints of its two mixed edges.
std::optional<ZeroSegment> zero_segment(const SymmetricTriangulation& t,
                                        const Labelling& l, int tri);

/// Traces every component of the zero level set. Each path starts at the
/// smallest triangle index of its component and leaves it across the
/// smaller-index mixed edge, which makes the output deterministic.
std::vector<ZeroPath> trace_paths(const SymmetricTriangulation& t, const Labelling& l);

/// Invariance and antipodal-pairing analysis of a traced path collection.
CertificationReport certify_paths(const SymmetricTriangulation& t,
                                  const std::vector<ZeroPath>& paths);

/// trace_paths plus certification. Throws TheoremViolation unless there is
/// exactly one invariant path, the total count is odd and the remaining
/// paths pair up antipodally. On a valid labelling of a valid mesh that
/// error is unreachable; reaching it signals a bug or a corrupt input.
TraceResult trace_all(const SymmetricTriangulation& t, const Labelling& l);

/// True iff the path's mixed-edge set is closed under the antipodal map.
/// Integer index comparison, no tolerance.
bool is_invariant(const SymmetricTriangulation& t, const ZeroPath& path);

/// For an invariant path of length 2q, verifies that the antipodal map acts
/// on the edge cycle as the half-length shift and returns q. Throws
/// NoShiftStructure if the shift property fails.
int antipodal_shift_index(const SymmetricTriangulation& t, const ZeroPath& path);

/// Independent partition oracle: groups mixed triangles with union-find,
/// joining across shared mixed edges. Groups are sorted ascending and
/// ordered by their smallest element.
std::vector<std::vector<int>> mixed_partition_union_find(const SymmetricTriangulation& t,
                                                         const Labelling& l);

/// Chord midpoint of an edge.
Vec3 edge_midpoint(const SymmetricTriangulation& t, int e);

}  // namespace zerotrace
