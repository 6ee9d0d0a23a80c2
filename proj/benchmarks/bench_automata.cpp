#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "langgen/automaton_ops.hpp"
#include "langgen/generatability.hpp"
#include "langgen/witness.hpp"

using namespace langgen;

namespace {

Automaton random_nfa(std::mt19937_64& rng, std::size_t states) {
  const Alphabet sigma({"0", "1"});
  std::bernoulli_distribution edge(0.25), fin(0.3);
  std::vector<Transition> ts;
  std::vector<StateId> finals;
  for (StateId q = 0; q < states; ++q) {
    if (fin(rng)) finals.push_back(q);
    for (SymbolId a = 0; a < 2; ++a) {
      for (StateId r = 0; r < states; ++r) {
        if (edge(rng)) ts.push_back({q, a, r});
      }
    }
  }
  return Automaton(sigma, states, 0, finals, ts);
}

void BM_Determinize(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto nfa = random_nfa(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(determinize(nfa));
}
BENCHMARK(BM_Determinize)->Arg(4)->Arg(8)->Arg(12);

void BM_WitnessProduct(benchmark::State& state) {
  const auto family = witness::build({static_cast<std::size_t>(state.range(0)), 3, true});
  std::vector<Automaton> members;
  for (const auto& m : family.members()) members.push_back(m.automaton);
  for (auto _ : state) benchmark::DoNotOptimize(product_intersection(members));
}
BENCHMARK(BM_WitnessProduct)->Arg(2)->Arg(3)->Arg(4);

void BM_WitnessCardinality(benchmark::State& state) {
  const auto family = witness::build({static_cast<std::size_t>(state.range(0)), 3, true});
  std::vector<Automaton> members;
  for (const auto& m : family.members()) members.push_back(m.automaton);
  const auto product = product_intersection(members);
  for (auto _ : state) benchmark::DoNotOptimize(cardinality(product));
}
BENCHMARK(BM_WitnessCardinality)->Arg(2)->Arg(3)->Arg(4);

void BM_Analyze(benchmark::State& state) {
  const auto family = witness::build({static_cast<std::size_t>(state.range(0)), 3, false});
  for (auto _ : state) benchmark::DoNotOptimize(analyze(family));
}
BENCHMARK(BM_Analyze)->Arg(2)->Arg(3);

void BM_Generate(benchmark::State& state) {
  const auto family = witness::build({2, 3, true});
  const CanonicalGenerator gen(family);
  auto words = enumerate_encoded(family[0], 24, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gen.generate(std::span<const EncodedWord>(words)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(words.size()));
}
BENCHMARK(BM_Generate)->Arg(1 << 10)->Arg(1 << 14);

}  // namespace
BENCHMARK_MAIN();
