#include <benchmark/benchmark.h>

#include <random>

#include "mgssp/dense_factor.hpp"
#include "mgssp/eigen.hpp"
#include "mgssp/preconditioner.hpp"
#include "mgssp/problems.hpp"
#include "mgssp/solvers.hpp"
#include "mgssp/spectral.hpp"

using namespace mgssp;

namespace {

Vector random_vector(std::size_t n) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(-1, 1);
  Vector v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

void BM_LuFactor(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  DenseMatrix m(n, n, random_vector(n * n));
  for (std::size_t i = 0; i < n; ++i) m(i, i) += 4;
  for (auto _ : state) benchmark::DoNotOptimize(lu_factor(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LuFactor)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->Complexity();

void BM_PreconditionerBuild(benchmark::State& state) {
  const auto s = build_example1(static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(build(FamilyKind::MGSSP, s, {0.6, 0.8}));
}
BENCHMARK(BM_PreconditionerBuild)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_PreconditionerApply(benchmark::State& state) {
  const auto s = build_example1(static_cast<std::size_t>(state.range(0)), 1.0);
  const auto pc = build(FamilyKind::MGSSP, s, {0.6, 0.8});
  const auto r = random_vector(s.size());
  for (auto _ : state) benchmark::DoNotOptimize(pc.apply(r));
}
BENCHMARK(BM_PreconditionerApply)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_GmresMgssp(benchmark::State& state) {
  const auto s = build_example1(static_cast<std::size_t>(state.range(0)), 1.0);
  const auto pc = build(FamilyKind::MGSSP, s, {0.6, 0.8});
  for (auto _ : state) benchmark::DoNotOptimize(gmres_solve(s, &pc));
}
BENCHMARK(BM_GmresMgssp)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_GmresPlain(benchmark::State& state) {
  const auto s = build_example1(static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(gmres_solve(s, nullptr));
}
BENCHMARK(BM_GmresPlain)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_StationaryMgssp(benchmark::State& state) {
  const auto s = build_example1(static_cast<std::size_t>(state.range(0)), 0.1);
  const auto pc = build(FamilyKind::MGSSP, s, {0.2, 0.1});
  for (auto _ : state) benchmark::DoNotOptimize(stationary_solve(s, pc));
}
BENCHMARK(BM_StationaryMgssp)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_DenseEigenvalues(benchmark::State& state) {
  const auto s = build_example1(static_cast<std::size_t>(state.range(0)), 1.0);
  const auto m = preconditioned_matrix(s, FamilyKind::MGSSP, {1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(dense_eigenvalues(m));
  state.counters["dim"] = static_cast<double>(m.rows());
}
BENCHMARK(BM_DenseEigenvalues)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
