#include "zerotrace/labelling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "zerotrace/errors.hpp"

namespace zerotrace {

ValidationReport validate_labelling(const SymmetricTriangulation& t, const Labelling& l) {
    ValidationReport rep;
    const int v_count = t.vertex_count();
    if (l.size() != v_count) {
        rep.add("label_count", l.size());
        return rep;
    }
    for (int i = 0; i < v_count; ++i) {
        int v = l.label(i);
        if (v != 1 && v != -1) rep.add("label_value", i);
    }
    for (int i = 0; i < v_count; ++i) {
        int a = t.antipode[static_cast<std::size_t>(i)];
        if (i < a && l.label(a) != -l.label(i)) rep.add("antisymmetry", i);
    }
    return rep;
}

SignLabelResult label_by_sign(const SymmetricTriangulation& t, const ScalarField& g,
                              double tie_tol, std::uint64_t seed, int max_retries) {
    if (!(tie_tol > 0.0)) throw std::invalid_argument("label_by_sign: tie_tol must be > 0");
    if (max_retries < 0) throw std::invalid_argument("label_by_sign: max_retries must be >= 0");

    std::mt19937_64 rng(seed);
    SignLabelResult result;
    result.mesh = t;

    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        const int v_count = result.mesh.vertex_count();
        std::vector<double> values(static_cast<std::size_t>(v_count));
        bool tie = false;
        for (int i = 0; i < v_count && !tie; ++i) {
            values[static_cast<std::size_t>(i)] =
                g(result.mesh.vertices[static_cast<std::size_t>(i)]);
            if (std::abs(values[static_cast<std::size_t>(i)]) <= tie_tol) tie = true;
        }
        if (!tie) {
            result.labelling.labels.assign(static_cast<std::size_t>(v_count), 0);
            for (int i = 0; i < v_count; ++i) {
                int a = result.mesh.antipode[static_cast<std::size_t>(i)];
                if (i > a) continue;
                std::int8_t s = values[static_cast<std::size_t>(i)] > 0.0 ? 1 : -1;
                result.labelling.labels[static_cast<std::size_t>(i)] = s;
                result.labelling.labels[static_cast<std::size_t>(a)] =
                    static_cast<std::int8_t>(-s);
            }
            result.tie_retries_used = attempt;
            return result;
        }
        if (attempt == max_retries) break;
        Mat3 r = random_rotation(rng);
        result.mesh = rotate_mesh(t, r);
        result.rotation = r;
    }
    throw DegenerateField("label_by_sign: field within tie tolerance at some vertex after " +
                          std::to_string(max_retries) + " rotation retries");
}

double eval_simplicial(const SymmetricTriangulation& t, const Labelling& l,
                       const BarycentricPoint& p) {
    if (p.triangle < 0 || p.triangle >= t.triangle_count())
        throw std::invalid_argument("eval_simplicial: triangle index out of range");
    double sum = p.weights[0] + p.weights[1] + p.weights[2];
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("eval_simplicial: barycentric weights do not sum to 1");
    for (double w : p.weights)
        if (w < -1e-14)
            throw std::invalid_argument("eval_simplicial: negative barycentric weight");
    const auto& tri = t.triangles[static_cast<std::size_t>(p.triangle)];
    return p.weights[0] * l.label(tri[0]) + p.weights[1] * l.label(tri[1]) +
           p.weights[2] * l.label(tri[2]);
}

std::vector<int> mixed_edges(const SymmetricTriangulation& t, const Labelling& l) {
    std::vector<int> out;
    for (int e = 0; e < t.edge_count(); ++e) {
        const Edge& ed = t.edges[static_cast<std::size_t>(e)];
        if (l.label(ed.a) + l.label(ed.b) == 0) out.push_back(e);
    }
    return out;
}

int find_seed_triangle(const SymmetricTriangulation& t, const Labelling& l) {
    for (int i = 0; i < t.triangle_count(); ++i) {
        const auto& tri = t.triangles[static_cast<std::size_t>(i)];
        int s = l.label(tri[0]) + l.label(tri[1]) + l.label(tri[2]);
        if (s != 3 && s != -3) return i;
    }
    // Unreachable for a valid labelling: a vertex and its antipode have
    // opposite labels and the mesh is connected.
    throw std::logic_error("find_seed_triangle: no mixed triangle found");
}

Labelling random_antisymmetric_labelling(const SymmetricTriangulation& t,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Labelling l;
    l.labels.assign(static_cast<std::size_t>(t.vertex_count()), 0);
    for (int i = 0; i < t.vertex_count(); ++i) {
        int a = t.antipode[static_cast<std::size_t>(i)];
        if (i > a) continue;
        std::int8_t s = (rng() & 1u) ? 1 : -1;
        l.labels[static_cast<std::size_t>(i)] = s;
        l.labels[static_cast<std::size_t>(a)] = static_cast<std::int8_t>(-s);
    }
    return l;
}

}  // namespace zerotrace
