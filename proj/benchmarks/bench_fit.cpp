#include <benchmark/benchmark.h>

#include "rollage/ar_fit.hpp"
#include "rollage/criteria.hpp"
#include "rollage/rolling_average.hpp"
#include "rollage/simulate.hpp"

using namespace rollage;

namespace {

TimeSeries noise_series(int n) {
    ModelSpec noise{ModelKind::AR, {}, {}, 1.0};
    return simulate(noise, n, 12345);
}

void BM_SampleAcf(benchmark::State& state) {
    const auto series = noise_series(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto acf = sample_acf(series, 100);
        benchmark::DoNotOptimize(acf.gamma_hat.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleAcf)->RangeMultiplier(2)->Range(1 << 16, 1 << 19)->Complexity(benchmark::oN);

void BM_LevinsonAllOrders(benchmark::State& state) {
    const auto series = noise_series(100000);
    const auto acf = sample_acf(series, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto table = levinson_all_orders(acf, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(table.rows.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LevinsonAllOrders)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNSquared);

void BM_AcfPlusLevinson(benchmark::State& state) {
    const auto series = noise_series(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto table = levinson_all_orders(sample_acf(series, 100), 100);
        benchmark::DoNotOptimize(table.rows.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AcfPlusLevinson)->RangeMultiplier(2)->Range(1 << 16, 1 << 19)->Complexity(benchmark::oN);

void BM_CmleAllOrders(benchmark::State& state) {
    const auto series = noise_series(20000);
    for (auto _ : state) {
        auto table = cmle_all_orders(series, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(table.rows.data());
    }
}
BENCHMARK(BM_CmleAllOrders)->Arg(25)->Arg(50)->Arg(100);

void BM_OrderSelection(benchmark::State& state) {
    auto spec = random_model(ModelKind::AR, 5, 0, 23, 0.7);
    const auto series = simulate(spec, 100000, 1);
    for (auto _ : state) {
        auto report = select_order_rollage(series, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(report.p_hat);
    }
}
BENCHMARK(BM_OrderSelection)->Arg(50)->Arg(100);

void BM_BicCurve(benchmark::State& state) {
    auto spec = random_model(ModelKind::MA, 0, 5, 3, 0.5);
    const auto series = simulate(spec, 100000, 1);
    for (auto _ : state) {
        auto curve = bic_curve(series, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(curve.argmin);
    }
}
BENCHMARK(BM_BicCurve)->Arg(50)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
