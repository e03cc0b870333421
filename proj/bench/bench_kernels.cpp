// Serial reference vs OpenMP for the hot loops. Arg 0 = serial, 1 = parallel.

#include <random>

#include <benchmark/benchmark.h>

#include "weylsym/kernels.hpp"
#include "weylsym/verify/suite.hpp"
#include "weylsym/weyl.hpp"

namespace {

using namespace weylsym;

kernels::Execution mode(const benchmark::State& state) {
  return state.range(0) ? kernels::Execution::Parallel : kernels::Execution::Serial;
}

kernels::RationalMatrix dense_matrix(std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  kernels::RationalMatrix m(rows, std::vector<Rational>(cols));
  for (auto& row : m)
    for (auto& e : row) {
      e = Rational(num(rng), den(rng));
      e.canonicalize();
    }
  // Rank deficiency keeps the nullspace nontrivial.
  for (std::size_t r = rows / 2; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = m[r - rows / 2][c] * 3 - m[0][c];
  return m;
}

void BM_Nullspace(benchmark::State& state) {
  const auto m = dense_matrix(static_cast<std::size_t>(state.range(1)), static_cast<std::size_t>(state.range(1)) + 8);
  const auto ex = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::nullspace(m, ex));
}
BENCHMARK(BM_Nullspace)->ArgsProduct({{0, 1}, {40, 80}})->Unit(benchmark::kMillisecond);

void BM_GroupRelations(benchmark::State& state) {
  weyl::RelationOptions opts;
  opts.execution = mode(state);
  opts.samples = 40;
  for (auto _ : state) benchmark::DoNotOptimize(weyl::verify_group_relations(opts));
}
BENCHMARK(BM_GroupRelations)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Suite(benchmark::State& state) {
  verify::SuiteOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify::run_suite(verify::Scope::All, opts));
}
BENCHMARK(BM_Suite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
