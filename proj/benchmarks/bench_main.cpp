#include <benchmark/benchmark.h>

#include <numbers>

#include "groverpt/grover_sim.hpp"
#include "groverpt/oracle.hpp"
#include "groverpt/perturbation.hpp"
#include "groverpt/phase_solver.hpp"

using namespace groverpt;

namespace {

const PerturbationTable& table() {
  static const PerturbationTable t = PerturbationTable::build();
  return t;
}

void BM_series_convolve(benchmark::State& state) {
  const int cap = static_cast<int>(state.range(0));
  const TruncatedSeries a = taylor_trig(TrigKind::sin_sq_2phi, cap);
  const TruncatedSeries w = taylor_trig(TrigKind::cos_sq_2phi, cap);
  for (auto _ : state) {
    benchmark::DoNotOptimize(series_convolve(a, w, cap));
  }
}
BENCHMARK(BM_series_convolve)->Arg(40)->Arg(80);

void BM_compute_fg(benchmark::State& state) {
  FgOptions opt;
  opt.max_order = static_cast<int>(state.range(0));
  opt.degree = 40;
  opt.closed_form_max_order = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_fg(opt));
  }
}
BENCHMARK(BM_compute_fg)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_table_build(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(PerturbationTable::build());
  }
}
BENCHMARK(BM_table_build)->Unit(benchmark::kMillisecond);

void BM_p_bar(benchmark::State& state) {
  const PerturbationTable& t = table();
  double theta = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.p_bar(theta, 5.0).value);
    theta = theta < 1.5 ? theta + 1e-4 : 0.3;
  }
}
BENCHMARK(BM_p_bar);

void BM_p_max(benchmark::State& state) {
  const PerturbationTable& t = table();
  for (auto _ : state) {
    benchmark::DoNotOptimize(p_max(t, 3.0));
  }
}
BENCHMARK(BM_p_max)->Unit(benchmark::kMicrosecond);

void BM_x_c(benchmark::State& state) {
  const PerturbationTable& t = table();
  for (auto _ : state) {
    benchmark::DoNotOptimize(x_c(t, 0.5));
  }
}
BENCHMARK(BM_x_c)->Unit(benchmark::kMillisecond);

void BM_trajectory(benchmark::State& state) {
  SimConfig cfg;
  cfg.n = 9;
  cfg.m_max = 17;
  cfg.p = 0.01;
  std::uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trajectory(cfg, trajectory_seed(1, t++)));
  }
}
BENCHMARK(BM_trajectory)->Unit(benchmark::kMicrosecond);

void BM_exact_channel(benchmark::State& state) {
  SimConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.m_max = 17;
  cfg.p = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_exact_channel(cfg));
  }
}
BENCHMARK(BM_exact_channel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_quadrature(benchmark::State& state) {
  QuadratureSpec spec;
  spec.k = static_cast<int>(state.range(0));
  spec.theta = std::numbers::pi / 4;
  spec.tol = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(direct_Fk_quadrature(spec));
  }
}
BENCHMARK(BM_quadrature)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
