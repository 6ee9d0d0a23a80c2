#include <benchmark/benchmark.h>

#include "langgen/grammar.hpp"
#include "langgen/pda.hpp"
#include "langgen/tm.hpp"

using namespace langgen;

namespace {

/// Writes a 1 and moves right, n - 1 times, then halts.
tm::TuringMachine writer(std::size_t n) {
  tm::TuringMachine::RuleMap rules;
  for (StateId q = 0; q + 1 < n; ++q) rules[{q, 0}] = tm::Rule{q + 1, 1, tm::Move::Right};
  return tm::TuringMachine(Alphabet({"_", "1"}), 0, n, 0, {static_cast<StateId>(n - 1)}, rules);
}

void BM_JointIntersection(benchmark::State& state) {
  const auto m = writer(static_cast<std::size_t>(state.range(0)));
  const auto pair = tm::encode(m);
  const auto words = tm::history_words(m, 64);
  const std::size_t len = words.begin()->size();
  for (auto _ : state) benchmark::DoNotOptimize(tm::joint_intersection(pair.first, pair.second, len));
}
BENCHMARK(BM_JointIntersection)->DenseRange(2, 4);

void BM_PdaToCfg(benchmark::State& state) {
  const auto pair = tm::encode(writer(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(pda_to_cfg(pair.first));
}
BENCHMARK(BM_PdaToCfg)->DenseRange(2, 4);

void BM_CfgCardinality(benchmark::State& state) {
  const auto g = pda_to_cfg(tm::encode(writer(static_cast<std::size_t>(state.range(0)))).second);
  for (auto _ : state) benchmark::DoNotOptimize(cfg_cardinality(g));
}
BENCHMARK(BM_CfgCardinality)->DenseRange(2, 4);

void BM_DecideHalting(benchmark::State& state) {
  const auto m = writer(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tm::decide_halting(m, tm::AutoOracle{}));
}
BENCHMARK(BM_DecideHalting)->DenseRange(2, 4);

}  // namespace
BENCHMARK_MAIN();
