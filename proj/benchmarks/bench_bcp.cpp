#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "orclsim/bcp.hpp"

namespace {

void BM_BlockOdds(benchmark::State& state) {
  const orclsim::BcpConfig cfg;
  double w = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(orclsim::block_odds(w, 0.5, 2.0, 8.0, 3, 300, cfg));
    w = w == 10.0 ? 10.5 : 10.0;
  }
}
BENCHMARK(BM_BlockOdds);

void BM_BcpDetect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0.0, 1.5);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 75.0 + (i >= n / 2 ? 20.0 : 0.0) + noise(rng);
  orclsim::BcpConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(orclsim::bcp_detect(x, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BcpDetect)->Arg(60)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace
