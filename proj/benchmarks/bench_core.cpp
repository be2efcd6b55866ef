#include <benchmark/benchmark.h>

#include <cmath>

#include "orliczlab/field2d.hpp"
#include "orliczlab/kg.hpp"
#include "orliczlab/orlicz.hpp"
#include "orliczlab/phi.hpp"
#include "orliczlab/profiles.hpp"
#include "orliczlab/rearrange.hpp"

using namespace orliczlab;

namespace {

void BM_PhiP(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-3;
    if (x > 4.0) x = 0.0;
    benchmark::DoNotOptimize(phi_p(x, p));
  }
}
BENCHMARK(BM_PhiP)->Arg(1)->Arg(3);

void BM_LuxemburgNormBubble(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  const auto g = elementary_concentration(moser_profile(1.0, 2.0), alpha);
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(g, {}));
  state.counters["samples"] = static_cast<double>(g.size());
}
BENCHMARK(BM_LuxemburgNormBubble)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Rearrangement(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = Field2D::sample(
      [](Point2 p) { return std::exp(-((p.x - 0.3) * (p.x - 0.3) + p.y * p.y) / 0.2); }, n, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_decreasing_rearrangement(f));
  state.counters["cells"] = static_cast<double>(n * n);
}
BENCHMARK(BM_Rearrangement)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_KgStep(benchmark::State& state) {
  const double dr = 1.0 / static_cast<double>(state.range(0));
  const CauchyData data{[](double r) { return r >= 1.0 ? 0.0 : 0.35 * std::pow(1.0 - r * r, 4); },
                        [](double) { return 0.0; }, 1.0};
  auto s = initial_state(data, 12.0, dr, 1);
  for (auto _ : state) step(s, 0.25 * dr, Dynamics::Nonlinear);
  state.counters["nodes"] = static_cast<double>(s.nodes());
}
BENCHMARK(BM_KgStep)->Arg(64)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
