#include <benchmark/benchmark.h>

#include <vector>

#include "sphlab/gauss.hpp"
#include "sphlab/lab/rng.hpp"
#include "sphlab/lattice.hpp"
#include "sphlab/multiplier.hpp"
#include "sphlab/ncmax.hpp"
#include "sphlab/torus.hpp"

using namespace sphlab;

static void BM_RepCounts(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rep_counts(5, state.range(0)));
}
BENCHMARK(BM_RepCounts)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_SphereShell(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sphere_shell(5, state.range(0)));
  state.counters["points"] = static_cast<double>(rep_count(5, state.range(0)));
}
BENCHMARK(BM_SphereShell)->Arg(16)->Arg(64)->Arg(256);

static void BM_GaussDft(benchmark::State& state) {
  const std::vector<std::int64_t> k{1, -2, 3, 0, 5};
  const std::int64_t q = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(gauss_dft(1, q, k));
}
BENCHMARK(BM_GaussDft)->Arg(5)->Arg(11)->Arg(25);

static void BM_ApplyMultiplier(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const FrequencyGrid grid(5, side);
  const auto field = sample_exact_multiplier(grid, sphere_shell(5, 4));
  const auto f = LatticeFunction::delta(5, side);
  for (auto _ : state) benchmark::DoNotOptimize(apply_multiplier(field, f));
  state.counters["sites"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_ApplyMultiplier)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_SphericalConvolve(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto shell = sphere_shell(5, 4);
  const auto f = LatticeFunction::constant(5, side, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(spherical_convolve(shell, f));
}
BENCHMARK(BM_SphericalConvolve)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_Ncmax(benchmark::State& state) {
  lab::Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  MaxNormProblem problem;
  problem.p = 2.0;
  for (int j = 0; j < 4; ++j) problem.family.push_back(lab::random_hermitian(rng, n));
  for (auto _ : state) benchmark::DoNotOptimize(ncmax_norm(problem));
}
BENCHMARK(BM_Ncmax)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_ApproxTotal(benchmark::State& state) {
  const SphereScale scale = SphereScale::make(5, 16);
  ApproxOptions options;
  options.q_max = state.range(0);
  const Approximant approx(scale, options);
  const std::vector<double> xi{0.1, 0.2, 0.3, 0.4, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(approx(xi));
}
BENCHMARK(BM_ApproxTotal)->Arg(8)->Arg(32);
BENCHMARK_MAIN();
