#include <benchmark/benchmark.h>

#include <random>

#include "equideriv/kernels.hpp"

using namespace equideriv;

namespace {

ScalarMatrix random_matrix(std::size_t rows, std::size_t cols, unsigned order, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> coeff(-3, 3);
  std::uniform_int_distribution<long> power(0, static_cast<long>(order) - 1);
  ScalarMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = CyclotomicScalar(coeff(rng)) * CyclotomicScalar::root_of_unity(order, power(rng)) +
                CyclotomicScalar(coeff(rng));
  return m;
}

void BM_MultiplySerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, n, 3, 1), b = random_matrix(n, n, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::multiply(a, b));
}

void BM_MultiplyParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, n, 3, 1), b = random_matrix(n, n, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::multiply(a, b));
}

void BM_RowReduceSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, n + 4, 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::row_reduce(a));
}

void BM_RowReduceParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, n + 4, 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::row_reduce(a));
}

std::vector<ScalarMatrix> random_terms(std::size_t count, std::size_t n) {
  std::vector<ScalarMatrix> terms;
  for (std::size_t i = 0; i < count; ++i) terms.push_back(random_matrix(n, n, 4, 10 + static_cast<unsigned>(i)));
  return terms;
}

void BM_SumSerial(benchmark::State& state) {
  auto terms = random_terms(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::sum(std::span<const ScalarMatrix>(terms)));
}

void BM_SumParallel(benchmark::State& state) {
  auto terms = random_terms(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::sum(std::span<const ScalarMatrix>(terms)));
}

}  // namespace

BENCHMARK(BM_MultiplySerial)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_MultiplyParallel)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_RowReduceSerial)->Arg(16)->Arg(32)->Arg(48);
BENCHMARK(BM_RowReduceParallel)->Arg(16)->Arg(32)->Arg(48);
BENCHMARK(BM_SumSerial)->Arg(32)->Arg(64);
BENCHMARK(BM_SumParallel)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
