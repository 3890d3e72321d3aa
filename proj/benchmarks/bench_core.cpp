#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "fractree/analysis.hpp"
#include "fractree/compile.hpp"
#include "fractree/tree.hpp"

using namespace fractree;

namespace {

GeneratorField fig1_field() {
    return {AnalyticProfile::exponential(0.88), AnalyticProfile::constant(M_PI / 10.0),
            PhaseMode::global};
}

Schedule binary_schedule() {
    return {{BranchEvent{std::nullopt, {{1.0, +1, 1.0}, {1.0, -1, 1.0}}}}};
}

std::vector<SimilarityMap> example_maps() {
    return {{0.6, M_PI / 5.0, {0.0, 1.0}}, {0.6, -M_PI / 5.0, {0.0, 1.0}}};
}

PointSet random_cloud(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    std::vector<Vec2> pts;
    pts.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back({ux(rng), ux(rng)});
    return PointSet(std::move(pts));
}

}  // namespace

static void BM_grow_closed_form(benchmark::State& state) {
    int depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto tree = grow_tree(fig1_field(), {0, 0, M_PI / 2, 0}, 1.0, binary_schedule(), depth);
        benchmark::DoNotOptimize(tree.branches.size());
    }
}
BENCHMARK(BM_grow_closed_form)->Arg(6)->Arg(8)->Arg(10);

static void BM_rk4_unit_span(benchmark::State& state) {
    GeneratorField field{AnalyticProfile::constant(1.0),
                         AnalyticProfile::sinusoid(0.3, 0.2, 2.0), PhaseMode::local};
    IntegrateOptions opts;
    opts.endpoints_only = true;
    for (auto _ : state) {
        auto traj = integrate_rk4(field, {}, {0.0, 1.0}, 1e-3, opts);
        benchmark::DoNotOptimize(traj.end_state().x);
    }
}
BENCHMARK(BM_rk4_unit_span);

static void BM_compile_matched(benchmark::State& state) {
    int depth = static_cast<int>(state.range(0));
    auto dtree = expand_discrete(example_maps(), depth, {0, 0});
    for (auto _ : state) {
        auto gtree = compile(dtree, EdgeCurvePolicy::matched());
        benchmark::DoNotOptimize(gtree.branches.size());
    }
}
BENCHMARK(BM_compile_matched)->Arg(6)->Arg(8);

static void BM_hausdorff_exact(benchmark::State& state) {
    auto p = random_cloud(static_cast<int>(state.range(0)), 1);
    auto q = random_cloud(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hausdorff(p, q));
    }
}
BENCHMARK(BM_hausdorff_exact)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_hausdorff_grid(benchmark::State& state) {
    auto p = random_cloud(static_cast<int>(state.range(0)), 1);
    auto q = random_cloud(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hausdorff_grid(p, q));
    }
}
BENCHMARK(BM_hausdorff_grid)->Arg(256)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
