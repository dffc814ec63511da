// Microbenchmarks for the banded-operator kernels that dominate the suites:
// windowed norms (SVD), structured products, derivation applications, and the
// rectangular index sections.

#include <benchmark/benchmark.h>

#include "qdisk/derivations.hpp"
#include "qdisk/khomology.hpp"
#include "qdisk/norms.hpp"
#include "qdisk/operators.hpp"
#include "qdisk/random_ops.hpp"

namespace {

using namespace qdisk;

void BM_NormMN(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  CounterRng rng(1, "bench-norm", 0);
  const CompactOp a = random_compact(rng, dim, dim / 4);
  for (auto _ : state) benchmark::DoNotOptimize(norm_MN(a, 3, 2));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NormMN)->Arg(32)->Arg(64)->Arg(128)->Complexity();

void BM_HsWeighted(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  CounterRng rng(1, "bench-hs", 0);
  const CompactOp a = random_compact(rng, dim, dim - 2);
  for (auto _ : state) benchmark::DoNotOptimize(hs_weighted(a, 2, 2));
}
BENCHMARK(BM_HsWeighted)->Arg(64)->Arg(128);

void BM_StructuredMul(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  CounterRng rng(1, "bench-mul", 0);
  const ToeplitzElem a{random_symbol(rng, 5), random_compact(rng, dim, 12)};
  const ToeplitzElem b{random_symbol(rng, 5), random_compact(rng, dim, 12)};
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
}
BENCHMARK(BM_StructuredMul)->Arg(64)->Arg(128)->Arg(256);

void BM_LiftDerivation(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  CounterRng rng(1, "bench-lift", 0);
  const auto [b, c] = random_admissible_pair(rng, dim, dim / 4);
  for (auto _ : state) benchmark::DoNotOptimize(lift_derivation(b, c));
}
BENCHMARK(BM_LiftDerivation)->Arg(64)->Arg(128);

void BM_IndexOddCircle(benchmark::State& state) {
  const int half = static_cast<int>(state.range(0));
  CounterRng rng(1, "bench-index", 0);
  const Symbol f = random_nonvanishing_symbol(rng, 3, -2);
  for (auto _ : state) benchmark::DoNotOptimize(index_odd_circle(f, half));
}
BENCHMARK(BM_IndexOddCircle)->Arg(64)->Arg(128)->Arg(256);

void BM_ApplyGeneral(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  CounterRng rng(1, "bench-apply", 0);
  std::map<std::pair<int, int>, cplx> betas;
  for (int t = 0; t < 24; ++t)
    betas[{rng.range(-5, 5), rng.range(0, 12)}] = rng.complex_in_disk(2.0);
  const GeneralDerivation d(betas, 4.0, 2, 0);
  const CompactOp a = random_compact(rng, dim, dim / 3);
  for (auto _ : state) benchmark::DoNotOptimize(apply_general(d, a));
}
BENCHMARK(BM_ApplyGeneral)->Arg(64)->Arg(128);

}  // namespace
