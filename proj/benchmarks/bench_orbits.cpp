#include <benchmark/benchmark.h>

#include "orbitlab/gaps.hpp"
#include "orbitlab/operator.hpp"
#include "orbitlab/stability.hpp"

namespace {

using namespace orbitlab;

void BM_FoguelPairingSeries(benchmark::State& state) {
  const auto f = foguel(make_geometric_set(3, 1 << 16));
  const Vector x = PairVec{{}, FinVec::basis(0)};
  const Vector z = PairVec{FinVec::basis(0), {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairing_series(f, x, z, state.range(0)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FoguelPairingSeries)->RangeMultiplier(4)->Range(125, 8000)->Complexity();

void BM_PnRecursive(benchmark::State& state) {
  const auto set = make_geometric_set(3, 1 << 16);
  for (auto _ : state) {
    for (Index k = 0; k <= 40; ++k) benchmark::DoNotOptimize(pn_recursive(set, state.range(0), FinVec::basis(k)));
  }
}
BENCHMARK(BM_PnRecursive)->Arg(15)->Arg(60)->Arg(240);

void BM_PnClosedForm(benchmark::State& state) {
  const auto set = make_geometric_set(3, 1 << 16);
  for (auto _ : state) {
    for (Index k = 0; k <= 40; ++k) benchmark::DoNotOptimize(pn_closed_form(set, state.range(0), k));
  }
}
BENCHMARK(BM_PnClosedForm)->Arg(15)->Arg(60)->Arg(240);

void BM_FoguelFamilyDetector(benchmark::State& state) {
  const auto f = foguel(make_geometric_set(3, 1 << 16));
  std::vector<Vector> family;
  for (Index k = 0; k <= 12; ++k) family.emplace_back(PairVec{FinVec::basis(k), {}});
  for (Index k = 0; k <= 12; ++k) family.emplace_back(PairVec{{}, FinVec::basis(k)});
  const auto series = pairing_family(f, PairVec{{}, FinVec::basis(0)}, family, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_bounded_gap_zero_subseq(series, 8));
  }
}
BENCHMARK(BM_FoguelFamilyDetector)->Arg(500)->Arg(2000);

}  // namespace
