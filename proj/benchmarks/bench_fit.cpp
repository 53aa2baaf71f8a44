#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "recipgrowth/fit.hpp"
#include "recipgrowth/models.hpp"
#include "recipgrowth/segment.hpp"
#include "recipgrowth/series.hpp"

namespace {

recipgrowth::TimeSeries synthetic(int n) {
    // hyperbolic trend with a deterministic wobble, well clear of the blow-up
    std::vector<recipgrowth::TimePoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double t = 100.0 * i / (n - 1);
        double line = 6.0 - 0.05 * t;
        pts.push_back({t, (1.0 + 0.02 * std::sin(0.7 * i)) / line});
    }
    return recipgrowth::TimeSeries(std::move(pts), "units");
}

void BM_fit_first_order(benchmark::State& state) {
    recipgrowth::TimeSeries s = synthetic(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(recipgrowth::fit_first_order(s, {}));
    }
}
BENCHMARK(BM_fit_first_order)->Arg(100)->Arg(10000);

void BM_fit_segmented(benchmark::State& state) {
    recipgrowth::TimeSeries s = synthetic(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(recipgrowth::fit_segmented(s, 3, 4, {}));
    }
}
BENCHMARK(BM_fit_segmented)->Arg(30)->Arg(60)->Arg(120);

void BM_classify(benchmark::State& state) {
    recipgrowth::TimeSeries s = synthetic(100);
    for (auto _ : state) {
        benchmark::DoNotOptimize(recipgrowth::classify(s, 3));
    }
}
BENCHMARK(BM_classify);

} // namespace

BENCHMARK_MAIN();
