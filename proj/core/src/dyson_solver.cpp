#include "zerotrace/dyson_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "zerotrace/errors.hpp"
#include "zerotrace/sphere_mesh.hpp"
#include "zerotrace/zero_paths.hpp"

namespace zerotrace {

namespace {

constexpr double kPi = std::numbers::pi;

void check_config(const SolverConfig& cfg) {
    if (cfg.start_level > cfg.max_level)
        throw std::invalid_argument("solver config: start_level > max_level");
    if (!(cfg.residual_tol > 0.0) || !(cfg.pair_tol > 0.0))
        throw std::invalid_argument("solver config: tolerances must be > 0");
    if (cfg.samples_per_segment < 1)
        throw std::invalid_argument("solver config: samples_per_segment must be >= 1");
}

// Spot check of oddness at seeded points, absolute tolerance 1e-9.
void check_odd(const ScalarField& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x5bf0a8b1c6e53f2dull);
    for (int i = 0; i < 16; ++i) {
        double ct = 2.0 * uniform01(rng) - 1.0;
        double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        double ph = 2.0 * kPi * uniform01(rng);
        Vec3 p{st * std::cos(ph), st * std::sin(ph), ct};
        if (std::abs(g(p) + g(-p)) > 1e-9)
            throw std::invalid_argument("invariant_curve: field is not odd at spot points");
    }
}

// Cyclic polyline over the curve samples, parametrized by u with period 2.
// u and u + 1 index antipodal points; interpolated points are projected to
// the sphere.
class CurvePolyline {
  public:
    explicit CurvePolyline(const InvariantCurve& c)
        : pts_(c.points), n_(static_cast<int>(c.points.size())), half_(n_ / 2) {}

    Vec3 point(double u) const {
        double s = std::fmod(u * half_, static_cast<double>(n_));
        if (s < 0) s += static_cast<double>(n_);
        int i = static_cast<int>(s);
        if (i >= n_) i = 0;
        double t = s - i;
        const Vec3& p = pts_[static_cast<std::size_t>(i)];
        if (t == 0.0) return p;
        const Vec3& q = pts_[static_cast<std::size_t>((i + 1) % n_)];
        return normalized(lerp(p, q, t));
    }

    int half_samples() const { return half_; }

  private:
    const std::vector<Vec3>& pts_;
    int n_;
    int half_;
};

// Smallest v in (u1, u1 + 1] with angle(point(u1), point(v)) = theta,
// located by grid bracketing plus bisection. The angle is 0 at v = u1 and
// exactly pi at v = u1 + 1, so a crossing exists for any theta in (0, pi).
std::optional<double> first_angle_crossing(const CurvePolyline& c, double u1,
                                           double theta) {
    const Vec3 x = c.point(u1);
    const int n = c.half_samples();
    const double step = 1.0 / n;
    double lo = u1;
    for (int j = 1; j <= n; ++j) {
        double v = u1 + j * step;
        double h = angle_between(x, c.point(v)) - theta;
        if (h == 0.0) return v;
        if (h > 0.0) {
            double hi = v;
            for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
                double mid = 0.5 * (lo + hi);
                if (angle_between(x, c.point(mid)) - theta > 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            return 0.5 * (lo + hi);
        }
        lo = v;
    }
    return std::nullopt;
}

DiameterQuadruple make_quadruple(const ScalarField& f, const CurvePolyline& c, double u1,
                                 double u2, double theta) {
    DiameterQuadruple q;
    q.x = c.point(u1);
    q.y = c.point(u2);
    q.values = {f(q.x), f(-q.x), f(q.y), f(-q.y)};
    q.angle = angle_between(q.x, q.y);
    q.chord = 2.0 * std::sin(0.5 * q.angle);
    q.value_spread = *std::max_element(q.values.begin(), q.values.end()) -
                     *std::min_element(q.values.begin(), q.values.end());
    q.angle_residual = std::abs(q.angle - theta);
    return q;
}

}  // namespace

ScalarField odd_part(ScalarField f) {
    return [f = std::move(f)](const Vec3& p) { return f(p) - f(-p); };
}

double chord_to_angle(double r) {
    if (!(r > 0.0 && r < 2.0))
        throw ROutOfRange("chord_to_angle: r must lie in (0, 2), got " + std::to_string(r));
    return 2.0 * std::asin(0.5 * r);
}

double angle_to_chord(double theta) {
    if (!(theta > 0.0 && theta < kPi))
        throw ROutOfRange("angle_to_chord: theta must lie in (0, pi), got " +
                          std::to_string(theta));
    return 2.0 * std::sin(0.5 * theta);
}

InvariantCurve invariant_curve(const ScalarField& g, const SolverConfig& cfg) {
    check_config(cfg);
    check_odd(g, cfg.seed);

    const int cap = refinement_level_cap();
    const int max_level = std::min(cfg.max_level, cap);
    double best_residual = std::numeric_limits<double>::infinity();

    for (int level = cfg.start_level; level <= max_level; ++level) {
        SymmetricTriangulation base = build_refined(level);
        SignLabelResult labelled =
            label_by_sign(base, g, cfg.tie_tol, cfg.seed, cfg.max_tie_retries);
        const SymmetricTriangulation& mesh = labelled.mesh;

        TraceResult traced = trace_all(mesh, labelled.labelling);
        const ZeroPath& path = traced.paths[static_cast<std::size_t>(traced.invariant_index)];
        const int q = antipodal_shift_index(mesh, path);

        // Crossing of g on each mixed edge of the invariant path, located by
        // linear interpolation between the oppositely signed endpoint values.
        // Crossings of antipodal edges are stored as exact negations, which
        // the half-shift alignment of the edge cycle makes possible.
        std::vector<Vec3> crossings(static_cast<std::size_t>(2 * q));
        for (int k = 0; k < q; ++k) {
            const Edge& ed = mesh.edges[static_cast<std::size_t>(path.edges[static_cast<std::size_t>(k)])];
            int plus = labelled.labelling.label(ed.a) > 0 ? ed.a : ed.b;
            int minus = plus == ed.a ? ed.b : ed.a;
            const Vec3& pp = mesh.vertices[static_cast<std::size_t>(plus)];
            const Vec3& pm = mesh.vertices[static_cast<std::size_t>(minus)];
            double gp = g(pp);
            double gm = g(pm);
            double t = gp / (gp - gm);
            if (!std::isfinite(t) || !(t > 0.0 && t < 1.0)) t = 0.5;
            Vec3 c = normalized(lerp(pp, pm, t));
            crossings[static_cast<std::size_t>(k)] = c;
            crossings[static_cast<std::size_t>(k + q)] = -c;
        }

        // Uniform resampling of the crossing polyline, first half sampled,
        // second half negated so the shift structure is exact.
        const int sps = cfg.samples_per_segment;
        const int half = q * sps;
        std::vector<Vec3> points(static_cast<std::size_t>(2 * half));
        for (int k = 0; k < q; ++k) {
            const Vec3& c0 = crossings[static_cast<std::size_t>(k)];
            const Vec3& c1 = crossings[static_cast<std::size_t>(k + 1)];
            for (int j = 0; j < sps; ++j) {
                double t = static_cast<double>(j) / sps;
                points[static_cast<std::size_t>(k * sps + j)] =
                    j == 0 ? c0 : normalized(lerp(c0, c1, t));
            }
        }
        for (int i = 0; i < half; ++i)
            points[static_cast<std::size_t>(half + i)] = -points[static_cast<std::size_t>(i)];

        double residual = 0.0;
        for (const Vec3& p : points) residual = std::max(residual, std::abs(g(p)));

        if (residual <= cfg.residual_tol) {
            InvariantCurve curve;
            curve.level = level;
            curve.points = std::move(points);
            curve.max_abs_g = residual;
            return curve;
        }
        best_residual = std::min(best_residual, residual);
    }
    throw NoConvergence("invariant_curve: residual " + std::to_string(best_residual) +
                        " above tolerance " + std::to_string(cfg.residual_tol) +
                        " at level " + std::to_string(max_level));
}

DiameterQuadruple find_equal_pair(const ScalarField& f, const InvariantCurve& curve,
                                  double theta, const SolverConfig& cfg) {
    if (!(theta > 0.0 && theta < kPi))
        throw ROutOfRange("find_equal_pair: theta must lie in (0, pi)");
    const int total = static_cast<int>(curve.points.size());
    const int half = total / 2;
    if (total < 6 || total % 2 != 0)
        throw std::invalid_argument("find_equal_pair: curve must have an even number of samples");
    for (int i = 0; i < half; ++i) {
        if (!(curve.points[static_cast<std::size_t>(i + half)] ==
              -curve.points[static_cast<std::size_t>(i)]))
            throw std::invalid_argument("find_equal_pair: curve lacks the antipodal shift");
    }

    CurvePolyline c(curve);
    const int n = c.half_samples();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    // phi(u1) = f(point(u1)) - f(point(u2(u1))) across one u-period; the
    // antipodal half repeats the same quadruples with both diameters negated.
    std::vector<double> u2s(static_cast<std::size_t>(n + 1), nan);
    std::vector<double> phis(static_cast<std::size_t>(n + 1), nan);
    double value_scale = 0.0;
    for (int i = 0; i <= n; ++i) {
        double u1 = static_cast<double>(i) / n;
        auto u2 = first_angle_crossing(c, u1, theta);
        if (!u2) continue;
        double r1 = f(c.point(u1));
        double r2 = f(c.point(*u2));
        u2s[static_cast<std::size_t>(i)] = *u2;
        phis[static_cast<std::size_t>(i)] = r1 - r2;
        value_scale = std::max({value_scale, std::abs(r1), std::abs(r2)});
    }

    const double hit_tol = 1e-14 * std::max(1.0, value_scale);
    std::vector<std::pair<double, double>> roots;  // (u1, u2)
    for (int i = 0; i <= n; ++i) {
        double phi = phis[static_cast<std::size_t>(i)];
        if (std::isfinite(phi) && std::abs(phi) <= hit_tol)
            roots.emplace_back(static_cast<double>(i) / n, u2s[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < n; ++i) {
        double fa = phis[static_cast<std::size_t>(i)];
        double fb = phis[static_cast<std::size_t>(i + 1)];
        if (!std::isfinite(fa) || !std::isfinite(fb)) continue;
        if (std::abs(fa) <= hit_tol || std::abs(fb) <= hit_tol) continue;
        if ((fa < 0.0) == (fb < 0.0)) continue;

        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        double flo = fa;
        for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
            double mid = 0.5 * (lo + hi);
            auto mu2 = first_angle_crossing(c, mid, theta);
            if (!mu2) break;
            double fm = f(c.point(mid)) - f(c.point(*mu2));
            if (fm == 0.0) {
                lo = mid;
                hi = mid;
                break;
            }
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        double u1 = 0.5 * (lo + hi);
        if (auto u2 = first_angle_crossing(c, u1, theta)) roots.emplace_back(u1, *u2);
    }

    if (roots.empty())
        throw PairSearchFailed(
            "find_equal_pair: no equal-value crossing at grid resolution; "
            "increase samples_per_segment or the refinement level");

    // Among admissible quadruples pick the one with the largest shared value.
    // The root set is a geometric invariant of the curve while the traversal
    // direction is not, so this choice makes the result deterministic.
    bool found = false;
    DiameterQuadruple best;
    double best_value = -std::numeric_limits<double>::infinity();
    double best_u1 = 0.0;
    for (const auto& [u1, u2] : roots) {
        DiameterQuadruple q = make_quadruple(f, c, u1, u2, theta);
        if (q.value_spread > cfg.pair_tol || q.angle_residual > cfg.pair_tol) continue;
        double value = 0.5 * (q.values[0] + q.values[2]);
        if (!found || value > best_value + hit_tol ||
            (std::abs(value - best_value) <= hit_tol && u1 < best_u1)) {
            found = true;
            best = q;
            best_value = value;
            best_u1 = u1;
        }
    }
    if (!found)
        throw PairSearchFailed(
            "find_equal_pair: no crossing met the pair tolerance; "
            "tighten residual_tol or increase samples_per_segment");
    return best;
}

DiameterQuadruple dyson(const ScalarField& f, const SolverConfig& cfg) {
    ScalarField g = odd_part(f);
    InvariantCurve curve = invariant_curve(g, cfg);
    return find_equal_pair(f, curve, 0.5 * kPi, cfg);
}

DiameterQuadruple livesay(const ScalarField& f, double r, const SolverConfig& cfg) {
    double theta = chord_to_angle(r);
    ScalarField g = odd_part(f);
    InvariantCurve curve = invariant_curve(g, cfg);
    return find_equal_pair(f, curve, theta, cfg);
}

}  // namespace zerotrace
