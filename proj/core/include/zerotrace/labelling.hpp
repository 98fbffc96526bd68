#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "zerotrace/sphere_mesh.hpp"

namespace zerotrace {

/// Antisymmetric +-1 vertex labelling: labels(antipode(i)) = -labels(i).
struct Labelling {
    std::vector<std::int8_t> labels;

    int label(int vertex) const { return labels[static_cast<std::size_t>(vertex)]; }
    int size() const { return static_cast<int>(labels.size()); }
};

/// Pure real-valued function on unit vectors. Must give the same output for
/// the same input; evaluations may happen concurrently and in any order.
using ScalarField = std::function<double(const Vec3&)>;

struct BarycentricPoint {
    int triangle = -1;
    std::array<double, 3> weights{0, 0, 0};
};

/// Reports missing labels, values outside {+1, -1}, and antisymmetry
/// violations.
ValidationReport validate_labelling(const SymmetricTriangulation& t, const Labelling& l);

struct SignLabelResult {
    SymmetricTriangulation mesh;   // possibly rotated copy of the input
    Labelling labelling;
    int tie_retries_used = 0;
    std::optional<Mat3> rotation;  // rotation applied to the input, if any
};

/// Labels each vertex by the sign of g. One representative per antipodal
/// pair is evaluated and its partner negated, so the result is exactly
/// antisymmetric even when g is only approximately odd. If any vertex has
/// |g| <= tie_tol the whole mesh is rotated by a seeded random rotation and
/// re-evaluated, up to max_retries times.
///
/// Throws DegenerateField when every retry still produces a tie.
SignLabelResult label_by_sign(const SymmetricTriangulation& t, const ScalarField& g,
                              double tie_tol = 1e-9, std::uint64_t seed = 1,
                              int max_retries = 16);

/// Value of the piecewise-linear extension of the labelling at a
/// barycentric point.
double eval_simplicial(const SymmetricTriangulation& t, const Labelling& l,
                       const BarycentricPoint& p);

/// Indices of all edges whose endpoint labels sum to zero, ascending.
/// The set is closed under the antipodal map.
std::vector<int> mixed_edges(const SymmetricTriangulation& t, const Labelling& l);

/// Smallest-index triangle whose vertex labels are not all equal.
int find_seed_triangle(const SymmetricTriangulation& t, const Labelling& l);

/// Uniformly random antisymmetric labelling, one coin flip per antipodal
/// pair. Valid by construction.
Labelling random_antisymmetric_labelling(const SymmetricTriangulation& t,
                                         std::uint64_t seed);

}  // namespace zerotrace
