#include <benchmark/benchmark.h>

#include "sl2lab/coinvariants.hpp"
#include "sl2lab/coset_module.hpp"
#include "sl2lab/iwasawa.hpp"
#include "sl2lab/subgroups.hpp"

using namespace sl2lab;

static void BM_SubgroupClosure(benchmark::State& state) {
  LevelContext ctx(3, uint32_t(state.range(0)));
  LevelGroup lg(ctx);
  auto gens = subgroup_generators(SubgroupSpec::Gk(1), ctx);
  std::vector<uint64_t> gi;
  for (auto& g : gens) gi.push_back(lg.encode(g));
  for (auto _ : state) benchmark::DoNotOptimize(closure(lg, gi));
  state.SetItemsProcessed(state.iterations() * int64_t(lg.size()));
}
BENCHMARK(BM_SubgroupClosure)->Arg(3)->Arg(4);

static void BM_RowReduce729(benchmark::State& state) {
  Rng rng(5);
  std::vector<FpVec> rows;
  for (int i = 0; i < 729; ++i) {
    FpVec v(729);
    for (auto& x : v) x = uint8_t(rng.below(3));
    rows.push_back(std::move(v));
  }
  for (auto _ : state) {
    RowReducer red(3, 729);
    for (const auto& v : rows) red.add(v);
    benchmark::DoNotOptimize(red.rank());
  }
}
BENCHMARK(BM_RowReduce729);

static void BM_CoinvariantFastPath(benchmark::State& state) {
  CoinvLab lab(3, 4, 1);
  auto M = lab.random_cyclic(1);
  const auto& S = lab.subgroup(SubgroupSpec::Gk(3));  // 729-dimensional coset space
  for (auto _ : state) benchmark::DoNotOptimize(lab.coinv_dim(M, S));
}
BENCHMARK(BM_CoinvariantFastPath);

static void BM_ExplicitCyclicModule(benchmark::State& state) {
  CoinvLab lab(3, 3, 1);
  auto M = lab.random_cyclic(1);
  for (auto _ : state) benchmark::DoNotOptimize(lab.explicit_module(M).dim);
}
BENCHMARK(BM_ExplicitCyclicModule);

static void BM_Census(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(invariant_subspace_census(3, uint32_t(state.range(0))).subspaces);
}
BENCHMARK(BM_Census)->Arg(3)->Arg(4);

static void BM_MonomialBasisRank(benchmark::State& state) {
  for (auto _ : state) {
    TruncatedAlgebra A(3, 3, 1);
    benchmark::DoNotOptimize(A.monomial_basis_full_rank());
  }
}
BENCHMARK(BM_MonomialBasisRank);

BENCHMARK_MAIN();
