#include <benchmark/benchmark.h>

#include "slspec/classifier.hpp"
#include "slspec/oracles/catalog.hpp"
#include "slspec/oracles/m_functions.hpp"
#include "slspec/oracles/special_functions.hpp"
#include "slspec/spectral.hpp"

using namespace slspec;

namespace {

const cplx I(0.0, 1.0);

void BM_gamma(benchmark::State& st) {
    cplx z(0.3, 1.7);
    for (auto _ : st) benchmark::DoNotOptimize(oracles::gamma_fn(z));
}
BENCHMARK(BM_gamma);

void BM_digamma(benchmark::State& st) {
    cplx z(-2.3, 0.4);
    for (auto _ : st) benchmark::DoNotOptimize(oracles::digamma(z));
}
BENCHMARK(BM_digamma);

void BM_bessel_j(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(oracles::bessel_j(0.3, 5.0));
}
BENCHMARK(BM_bessel_j);

void BM_m_legendre_oracle(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(oracles::m_legendre(cplx(3.0, 2.0)));
}
BENCHMARK(BM_m_legendre_oracle);

void BM_m_function(benchmark::State& st, const char* name, std::map<std::string, double> params) {
    const SLProblem p = oracles::catalog(name, params).problem;
    for (auto _ : st) benchmark::DoNotOptimize(m_function(p, 0.0, 0.0, I).m);
}
BENCHMARK_CAPTURE(BM_m_function, legendre, "legendre", {})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_m_function, bessel, "bessel", {{"gamma", 0.5}})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_m_function, laguerre, "laguerre", {{"beta", 1.5}})->Unit(benchmark::kMillisecond);

void BM_legendre_eigenvalues(benchmark::State& st) {
    const SLProblem p = oracles::catalog("legendre").problem;
    const BoundaryCondition bc = friedrichs(p, {});
    SpectralConfig cfg;
    cfg.threads = 1;
    for (auto _ : st) benchmark::DoNotOptimize(eigenvalues(p, bc, -0.5, 25.0, cfg).eigenvalues.size());
}
BENCHMARK(BM_legendre_eigenvalues)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_classify(benchmark::State& st) {
    const SLProblem p = oracles::catalog("bessel", {{"gamma", 0.5}}).problem;
    for (auto _ : st) benchmark::DoNotOptimize(classify_endpoint(p, Side::left, I).verdict);
}
BENCHMARK(BM_classify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
