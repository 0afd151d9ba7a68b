#include <benchmark/benchmark.h>

#include "qcdl/distortion_envelope.hpp"
#include "qcdl/metrics.hpp"
#include "qcdl/special_functions.hpp"
#include "qcdl/suites.hpp"

namespace {

void BM_EllipticK(benchmark::State& state) {
  double r = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(qcdl::complete_elliptic_k(r));
}
BENCHMARK(BM_EllipticK);

void BM_Mu(benchmark::State& state) {
  double r = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(qcdl::mu(r));
}
BENCHMARK(BM_Mu);

void BM_MuInverse(benchmark::State& state) {
  double y = 2.5;
  for (auto _ : state) benchmark::DoNotOptimize(qcdl::mu_inverse(y));
}
BENCHMARK(BM_MuInverse);

void BM_KPunctured(benchmark::State& state) {
  const qcdl::Vec x{1.0, 2.0, 0.5};
  const qcdl::Vec y{-0.3, 0.7, 4.0};
  for (auto _ : state) benchmark::DoNotOptimize(qcdl::k_punctured(x, y));
}
BENCHMARK(BM_KPunctured);

void BM_DiamBruteforce(benchmark::State& state) {
  const qcdl::Vec x{0.3, 0.6};
  const auto resolution = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcdl::diam_a_bruteforce(x, 0.1, resolution));
}
BENCHMARK(BM_DiamBruteforce)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_RunSuite(benchmark::State& state) {
  qcdl::SamplingPlan plan;
  plan.samples = 10000;
  plan.threads = 1;
  const qcdl::Suite& suite = *qcdl::find_suite("vesna");
  for (auto _ : state) benchmark::DoNotOptimize(qcdl::run_suite(suite, plan).violations);
}
BENCHMARK(BM_RunSuite)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
