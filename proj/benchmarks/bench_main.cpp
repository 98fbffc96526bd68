#include <benchmark/benchmark.h>

#include "zerotrace/dyson_solver.hpp"
#include "zerotrace/labelling.hpp"
#include "zerotrace/sphere_mesh.hpp"
#include "zerotrace/zero_paths.hpp"

namespace {

using namespace zerotrace;

void BM_BuildRefined(benchmark::State& state) {
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        SymmetricTriangulation t = build_refined(level);
        benchmark::DoNotOptimize(t.triangles.data());
    }
}
BENCHMARK(BM_BuildRefined)->Arg(3)->Arg(5)->Arg(7);

void BM_TraceEquatorBand(benchmark::State& state) {
    const int level = static_cast<int>(state.range(0));
    ScalarField g = [](const Vec3& p) { return 2.0 * p.z; };
    SymmetricTriangulation t = build_refined(level);
    SignLabelResult labelled = label_by_sign(t, g);
    for (auto _ : state) {
        auto result = trace_all(labelled.mesh, labelled.labelling);
        benchmark::DoNotOptimize(result.paths.data());
    }
}
BENCHMARK(BM_TraceEquatorBand)->Arg(3)->Arg(5)->Arg(7);

void BM_TraceRandomLabelling(benchmark::State& state) {
    const int level = static_cast<int>(state.range(0));
    SymmetricTriangulation t = build_refined(level);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        Labelling l = random_antisymmetric_labelling(t, seed++);
        auto paths = trace_paths(t, l);
        benchmark::DoNotOptimize(paths.data());
    }
}
BENCHMARK(BM_TraceRandomLabelling)->Arg(3)->Arg(5);

void BM_DysonSolve(benchmark::State& state) {
    ScalarField f = [](const Vec3& p) { return p.z + p.x * p.x; };
    SolverConfig cfg;
    cfg.start_level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        DiameterQuadruple q = dyson(f, cfg);
        benchmark::DoNotOptimize(&q);
    }
}
BENCHMARK(BM_DysonSolve)->Arg(3)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
