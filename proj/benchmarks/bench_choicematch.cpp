#include <benchmark/benchmark.h>

#include "choicematch/axioms.hpp"
#include "choicematch/genlab.hpp"
#include "choicematch/individual.hpp"
#include "choicematch/many2many.hpp"
#include "choicematch/one2one.hpp"

using namespace choicematch;

namespace {

ChoiceTable table(std::size_t n, Profile p) { return gen_table({17, n, p}).table; }

Market market(std::size_t side, std::size_t contracts, Profile p) {
  MarketSpec s;
  s.seed = 5;
  s.firms = s.workers = side;
  s.contracts = contracts;
  s.firm_profile = s.worker_profile = p;
  return gen_market(s).market;
}

void BM_CheckSub(benchmark::State& state) {
  const ChoiceTable t = table(state.range(0), Profile::SUB_GA);
  for (auto _ : state) benchmark::DoNotOptimize(check_sub(t));
}
BENCHMARK(BM_CheckSub)->DenseRange(4, 10, 2);

void BM_CheckPi(benchmark::State& state) {
  const ChoiceTable t = table(state.range(0), Profile::PI);
  const ScanOptions o{static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(check_pi(t, o));
}
BENCHMARK(BM_CheckPi)->ArgsProduct({{6, 8, 10}, {1, 4}});

void BM_CheckBa(benchmark::State& state) {
  const ChoiceTable t = table(state.range(0), Profile::BA);
  for (auto _ : state) benchmark::DoNotOptimize(check_ba(t));
}
BENCHMARK(BM_CheckBa)->DenseRange(4, 10, 2);

void BM_GaGraph(benchmark::State& state) {
  const ChoiceTable t = table(state.range(0), Profile::SUB_GA);
  for (auto _ : state) benchmark::DoNotOptimize(check_ga_graph(t));
}
BENCHMARK(BM_GaGraph)->DenseRange(4, 10, 2);

void BM_GaChain(benchmark::State& state) {
  const ChoiceTable t = table(state.range(0), Profile::PI);
  GaChainOptions o;
  o.max_k = 8;
  for (auto _ : state) benchmark::DoNotOptimize(check_ga_chain(t, o));
}
BENCHMARK(BM_GaChain)->DenseRange(3, 5);

void BM_Gda(benchmark::State& state) {
  const ChoiceTable t = table(state.range(0), Profile::SUB_GA);
  for (auto _ : state) benchmark::DoNotOptimize(gda(t));
}
BENCHMARK(BM_Gda)->DenseRange(4, 10, 2);

void BM_Gdma(benchmark::State& state) {
  const Market m = market(3, state.range(0), Profile::SUB_GA);
  for (auto _ : state) benchmark::DoNotOptimize(gdma(m));
}
BENCHMARK(BM_Gdma)->DenseRange(4, 12, 4);

// A stable matching forces the whole scan.
void BM_CyScan(benchmark::State& state) {
  const Market m = market(3, state.range(0), Profile::PI);
  const Matching stable = gdma(m).matching;
  const auto scan = state.range(1) ? BlockScan::single_firm : BlockScan::full;
  for (auto _ : state) benchmark::DoNotOptimize(is_cy_stable(m, stable, scan));
}
BENCHMARK(BM_CyScan)->ArgsProduct({{6, 10, 14}, {0, 1}});

void BM_Daa(benchmark::State& state) {
  const Market m = market(4, state.range(0), Profile::BA);
  for (auto _ : state) benchmark::DoNotOptimize(daa(m));
}
BENCHMARK(BM_Daa)->DenseRange(4, 16, 4);

}  // namespace

BENCHMARK_MAIN();
