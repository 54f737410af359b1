#include <benchmark/benchmark.h>

#include <cmath>

#include "tfim/criticality.hpp"
#include "tfim/ed_oracle.hpp"
#include "tfim/entanglement.hpp"
#include "tfim/model_modes.hpp"

static void BM_ModeSpectrum(benchmark::State& state) {
    const auto grid = tfim::build_grid(static_cast<int>(state.range(0)),
                                       tfim::Parity::Even);
    for (auto _ : state) {
        auto spec = tfim::mode_spectrum(0.9, grid);
        benchmark::DoNotOptimize(spec);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ModeSpectrum)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

static void BM_EpsilonFinite(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(tfim::epsilon_finite(0.9, n).epsilon);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EpsilonFinite)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

static void BM_EpsilonInfinite(benchmark::State& state) {
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(tfim::epsilon_infinite(0.9, tol).epsilon);
}
BENCHMARK(BM_EpsilonInfinite)->DenseRange(6, 13, 1);

static void BM_DensityClosedForm(benchmark::State& state) {
    double p = 0.0;
    for (auto _ : state) {
        p += 1e-4;
        if (p > 0.49) p = 1e-4;
        benchmark::DoNotOptimize(tfim::g_of_p(p, 0.9));
    }
}
BENCHMARK(BM_DensityClosedForm);

static void BM_JumpClosedForm(benchmark::State& state) {
    for (auto _ : state) {
        auto r = tfim::jump_estimate(tfim::JumpMethod::ClosedFormIntegral);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_JumpClosedForm);

static void BM_GroundState(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto gs = tfim::ground_state(tfim::SpinHamiltonian{n, 0.5, 1.0});
        benchmark::DoNotOptimize(gs);
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(BM_GroundState)->DenseRange(4, 12, 2)->Complexity()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
