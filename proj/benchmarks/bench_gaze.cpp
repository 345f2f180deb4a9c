#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "orclsim/gaze.hpp"

namespace {

orclsim::SampleStream<orclsim::GazeSample> wandering_gaze(double seconds) {
  orclsim::SampleStream<orclsim::GazeSample> s{orclsim::StreamKind::gaze, 120.0, 0.0, {}};
  std::mt19937_64 rng(3);
  std::normal_distribution<double> step(0.0, 0.02);
  double dx = 0.0, dy = 0.0;
  for (int i = 0; i < static_cast<int>(seconds * 120.0); ++i) {
    dx = std::clamp(dx + step(rng), -0.8, 0.8);
    dy = std::clamp(dy + step(rng), -0.5, 0.5);
    orclsim::GazeSample g;
    g.left = {orclsim::normalized({dx, dy, 1.0}), 3.0, true};
    g.right = g.left;
    s.samples.push_back({{i / 120.0}, g});
  }
  return s;
}

void BM_RollingEntropy(benchmark::State& state) {
  const auto gaze = wandering_gaze(static_cast<double>(state.range(0)));
  const orclsim::CameraModel camera;
  const orclsim::EntropyOptions options;
  const orclsim::BcpConfig bcp;
  for (auto _ : state) {
    benchmark::DoNotOptimize(orclsim::rolling_entropy(gaze, camera, options, bcp));
  }
}
BENCHMARK(BM_RollingEntropy)->Arg(60)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_WindowEntropy(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<std::optional<orclsim::BinId>> seq(600);
  for (auto& b : seq) b = orclsim::BinId{static_cast<int>(rng() % 19), static_cast<int>(rng() % 11)};
  for (auto _ : state) {
    const auto w = orclsim::EntropyWindow::from_sequence(seq);
    benchmark::DoNotOptimize(orclsim::stationary_entropy(w) + orclsim::transition_entropy(w));
  }
}
BENCHMARK(BM_WindowEntropy);

}  // namespace
