#include <benchmark/benchmark.h>

#include "orbitlab/finite_matrix.hpp"

namespace {

using namespace orbitlab;

FiniteMatrix sample(std::size_t dim) {
  FiniteMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = Rational(static_cast<long>((r * 7 + c * 3) % 5) - 2, 3 + (r + c) % 4);
  return m;
}

void BM_ExactPower(benchmark::State& state) {
  const auto m = sample(5);
  for (auto _ : state) benchmark::DoNotOptimize(m.power(state.range(0)));
}
BENCHMARK(BM_ExactPower)->Arg(10)->Arg(40)->Arg(60);

void BM_MatrixPowerNorm(benchmark::State& state) {
  const auto m = sample(state.range(0)).scaled(Rational(1, 4));
  for (auto _ : state) benchmark::DoNotOptimize(matrix_power_norm(m, 40, 1e-9));
}
BENCHMARK(BM_MatrixPowerNorm)->Arg(3)->Arg(5)->Arg(8);

void BM_SpectralNorm(benchmark::State& state) {
  const auto m = sample(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(m));
}
BENCHMARK(BM_SpectralNorm)->Arg(5)->Arg(16);

}  // namespace
