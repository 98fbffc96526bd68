#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "zerotrace/labelling.hpp"
#include "zerotrace/vec3.hpp"

namespace zerotrace {

struct SolverConfig {
    int start_level = 4;
    int max_level = 8;
    double residual_tol = 1e-3;   // bound on |g| along the accepted curve
    double pair_tol = 1e-3;       // bound on value spread and angle residual
    int samples_per_segment = 8;
    std::uint64_t seed = 1;
    double tie_tol = 1e-9;
    int max_tie_retries = 16;
};

/// Closed curve of unit vectors approximating the invariant component of
/// the zero set of an odd field. The cyclic sequence has even length 2N and
/// the exact shift structure points[i + N] = -points[i].
struct InvariantCurve {
    int level = 0;
    std::vector<Vec3> points;
    double max_abs_g = 0.0;

    int half() const { return static_cast<int>(points.size()) / 2; }
};

/// Two diameters {x, -x} and {y, -y} with near-equal field values at all
/// four endpoints and a prescribed angle between them.
struct DiameterQuadruple {
    Vec3 x;
    Vec3 y;
    std::array<double, 4> values{};  // f(x), f(-x), f(y), f(-y)
    double angle = 0.0;
    double chord = 0.0;              // 2 sin(angle / 2)
    double value_spread = 0.0;       // max - min of the four values
    double angle_residual = 0.0;     // |angle - theta|
};

/// g(x) = f(x) - f(-x); exactly odd in IEEE arithmetic.
ScalarField odd_part(ScalarField f);

/// Refines the mesh from start_level upward, labels by sign of g, traces
/// the invariant zero path and refines it into a curve of approximate zeros
/// of g: on each crossed edge the linear interpolant of g between the two
/// oppositely signed endpoints locates the crossing, consecutive crossings
/// are resampled uniformly and projected to the sphere. Returns the first
/// level whose maximum |g| over all samples is within residual_tol.
///
/// Throws DegenerateField (propagated from labelling) and NoConvergence if
/// max_level is exhausted.
InvariantCurve invariant_curve(const ScalarField& g, const SolverConfig& cfg = {});

/// Searches the curve for a pair of diameters at central angle theta whose
/// four endpoint values agree. Parametrizes the curve by u in [0, 2) with
/// point(u + 1) = -point(u), locates every sign change of
/// phi(u1) = f(point(u1)) - f(point(u2(u1))) on the sample grid, where
/// u2(u1) is the smallest parameter past u1 at angle theta, refines each by
/// bisection and returns the admissible quadruple with the largest shared
/// value (a canonical choice independent of the curve's traversal
/// direction).
///
/// Throws PairSearchFailed when no candidate meets pair_tol.
DiameterQuadruple find_equal_pair(const ScalarField& f, const InvariantCurve& curve,
                                  double theta, const SolverConfig& cfg = {});

/// Equal values on two mutually orthogonal diameters (Dyson's theorem).
DiameterQuadruple dyson(const ScalarField& f, const SolverConfig& cfg = {});

/// Equal values on two diameters at chord distance r in (0, 2)
/// (Livesay / Zarankiewicz). r = sqrt(2) reduces to dyson().
DiameterQuadruple livesay(const ScalarField& f, double r, const SolverConfig& cfg = {});

/// theta = 2 asin(r / 2) for r in (0, 2).
double chord_to_angle(double r);

/// r = 2 sin(theta / 2) for theta in (0, pi).
double angle_to_chord(double theta);

}  // namespace zerotrace
