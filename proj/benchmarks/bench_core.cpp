#include <benchmark/benchmark.h>

#include "entpot/beamsplitter.hpp"
#include "entpot/moments.hpp"
#include "entpot/npt.hpp"
#include "entpot/states.hpp"

namespace {

using namespace entpot;

PhotonNumberDistribution thermal_fixture(int n_max) {
    // fixed-size geometric profile, renormalized; keeps n_max independent of
    // any tail policy
    std::vector<double> probs(n_max + 1);
    double sum = 0.0;
    double term = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        probs[n] = term;
        sum += term;
        term *= 0.5;
    }
    for (auto& p : probs) p /= sum;
    return validate_pnd(probs, 0.0);
}

void BM_OutputClosedForm(benchmark::State& state) {
    const auto pnd = thermal_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(output_closed_form(pnd));
    }
}
BENCHMARK(BM_OutputClosedForm)->Arg(8)->Arg(16)->Arg(32)->Arg(48);

void BM_OutputNumeric(benchmark::State& state) {
    const auto pnd = thermal_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(output_numeric(pnd));
    }
}
BENCHMARK(BM_OutputNumeric)->Arg(8)->Arg(16)->Arg(32);

void BM_ClassicalityCheck(benchmark::State& state) {
    const auto pnd = thermal_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(classicality_check(pnd, default_max_order(pnd)));
    }
}
BENCHMARK(BM_ClassicalityCheck)->Arg(16)->Arg(41)->Arg(64);

void BM_PtSpectrum(benchmark::State& state) {
    const auto pnd = thermal_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pt_spectrum(pnd));
    }
}
BENCHMARK(BM_PtSpectrum)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void BM_NptCertificate(benchmark::State& state) {
    const auto pnd = thermal_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(npt_certificate(pnd, 10));
    }
}
BENCHMARK(BM_NptCertificate)->Arg(16)->Arg(41)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
