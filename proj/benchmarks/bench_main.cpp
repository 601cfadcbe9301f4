#include <benchmark/benchmark.h>

#include "sqconf/discrete_config.hpp"
#include "sqconf/geometry.hpp"
#include "sqconf/graph_models.hpp"
#include "sqconf/homology.hpp"
#include "sqconf/sampling.hpp"
#include "sqconf/surface_models.hpp"

using namespace sqconf;

static void BM_BuildOrdered(benchmark::State& state) {
    auto base = build_disk(static_cast<int>(state.range(0))).complex;
    const int m = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(build_ordered(base, m).size());
}
BENCHMARK(BM_BuildOrdered)->Args({3, 2})->Args({3, 3})->Args({4, 3})->Unit(benchmark::kMillisecond);

static void BM_Homology(benchmark::State& state) {
    auto df = build_ordered(build_disk(3).complex, 3);
    const bool reduce = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(betti_numbers(df.complex(), reduce).betti);
    state.SetLabel(reduce ? "reduced" : "plain");
}
BENCHMARK(BM_Homology)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_TorusHomology(benchmark::State& state) {
    auto df = build_ordered(build_closed(1, 2).complex, 2);
    for (auto _ : state) benchmark::DoNotOptimize(betti_numbers(df.complex(), true).betti);
}
BENCHMARK(BM_TorusHomology)->Unit(benchmark::kMillisecond);

static void BM_Distance(benchmark::State& state) {
    GeometrySampler S(1);
    auto s = Surface::closed(2, 3);
    std::vector<Configuration> pairs;
    for (int i = 0; i < 256; ++i) pairs.push_back(S.free_points(s, 2));
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& z = pairs[i++ % pairs.size()];
        try {
            benchmark::DoNotOptimize(chebyshev_distance(s, z[0], z[1]));
        } catch (const GeometryError&) {
        }
    }
}
BENCHMARK(BM_Distance);

static void BM_Membership(benchmark::State& state) {
    GeometrySampler S(2);
    auto s = Surface::closed(2, 3);
    std::vector<std::pair<std::vector<CellId>, Configuration>> cases;
    for (int i = 0; i < 256; ++i) {
        auto cell = S.clustered_cell(s, 3);
        cases.push_back({cell, S.point_in_cell(s, cell)});
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [cell, z] = cases[i++ % cases.size()];
        try {
            benchmark::DoNotOptimize(partial_cell_membership(s, cell, z));
        } catch (const GeometryError&) {
        }
    }
}
BENCHMARK(BM_Membership);
BENCHMARK_MAIN();
