#include <benchmark/benchmark.h>

#include "twistlab/barrier.hpp"
#include "twistlab/gevrey.hpp"
#include "twistlab/model.hpp"
#include "twistlab/variational.hpp"

namespace {

using namespace twistlab;

void BM_SegmentSolve(benchmark::State& state) {
  PerturbationParams p{2.0, 1.0, 1.0, 4};
  GeneratingFunction h = make_family(p, Variant::CosineOnly);
  const int window = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto [c, rep] = minimize_segment(h, 0.1, 0.9, window);
    benchmark::DoNotOptimize(rep.action);
  }
}
BENCHMARK(BM_SegmentSolve)->Arg(65)->Arg(257)->Arg(1025);

void BM_Heteroclinic(benchmark::State& state) {
  PerturbationParams p{2.0, 1.0, 1.0, static_cast<int>(state.range(0))};
  GeneratingFunction h = make_family(p, Variant::CosineOnly);
  for (auto _ : state) {
    auto [c, rep] = minimize_heteroclinic(h, HeteroclinicSign::Plus);
    benchmark::DoNotOptimize(rep.action);
  }
}
BENCHMARK(BM_Heteroclinic)->Arg(4)->Arg(16);

void BM_ZeroPlusBarrier(benchmark::State& state) {
  PerturbationParams p{2.0, 1.0, 1.0, 4};
  GeneratingFunction h = make_family(p, Variant::Full);
  for (auto _ : state) {
    double v = peierls_zero_plus(h, 0.43);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_ZeroPlusBarrier);

void BM_DerivativeSup(benchmark::State& state) {
  PerturbationParams p{2.0, 1.0, 2.0, 1};
  ScalarFunction v = bump(p);
  const int k = static_cast<int>(state.range(0));
  SupOptions opt;
  opt.grid = 4096;
  for (auto _ : state) {
    auto ds = derivative_sup(v, k, opt);
    benchmark::DoNotOptimize(ds.sup_value);
  }
}
BENCHMARK(BM_DerivativeSup)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
