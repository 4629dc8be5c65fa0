#include <benchmark/benchmark.h>

#include <vector>

#include "cubic/basic_family.hpp"
#include "cubic/polynomiograph.hpp"
#include "cubic/sampling.hpp"
#include "cubic/solver.hpp"

namespace {

std::vector<cubic::Polynomial> random_cubics(std::size_t n) {
  cubic::Rng rng(1);
  std::vector<cubic::Polynomial> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(cubic::random_cubic(rng).poly);
  return out;
}

void BM_Solve(benchmark::State& state) {
  const auto polys = random_cubics(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cubic::solve(polys[i++ & 1023]));
  }
}
BENCHMARK(BM_Solve);

void BM_CardanoOracle(benchmark::State& state) {
  const auto polys = random_cubics(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cubic::cardano_oracle(polys[i++ & 1023]));
  }
}
BENCHMARK(BM_CardanoOracle);

void BM_SolvePaperExample(benchmark::State& state) {
  const cubic::Polynomial p{2.0, -2.0, 0.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(cubic::solve(p));
}
BENCHMARK(BM_SolvePaperExample);

void BM_DStepCubic(benchmark::State& state) {
  const cubic::Polynomial p{2.0, -2.0, 0.0, 1.0};
  auto s = cubic::BasicSequenceState::start(p, cubic::Complex{0.3, 0.4});
  for (auto _ : state) {
    s = cubic::d_step_cubic(s);
    benchmark::DoNotOptimize(s.window);
  }
}
BENCHMARK(BM_DStepCubic);

void BM_Render(benchmark::State& state) {
  const cubic::Polynomial p{2.0, -2.0, 0.0, 1.0};
  cubic::RenderConfig cfg;
  cfg.pixels_x = cfg.pixels_y = 64;
  cfg.method = static_cast<cubic::RenderMethod>(state.range(0));
  cfg.cap = cubic::default_cap(cfg.method);
  for (auto _ : state) benchmark::DoNotOptimize(cubic::render(p, cfg, 1));
  state.SetItemsProcessed(state.iterations() * cfg.pixels_x * cfg.pixels_y);
}
BENCHMARK(BM_Render)
    ->Arg(static_cast<int>(cubic::RenderMethod::kNewton))
    ->Arg(static_cast<int>(cubic::RenderMethod::kBasicSequence))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
