#include "langgen/automaton_ops.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "langgen/error.hpp"

namespace langgen {
namespace {

using StateSet = std::vector<StateId>;
using StateSetIndex = std::unordered_map<StateSet, StateId, boost::hash<StateSet>>;

/// Successor lists ignoring symbols, used for graph algorithms.
std::vector<std::vector<StateId>> adjacency(const Automaton& a) {
  std::vector<std::vector<StateId>> adj(a.state_count());
  for (const auto& t : a.transitions()) adj[t.from].push_back(t.to);
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

/// Iterative three-colour DFS from the initial state.
bool has_cycle(const Automaton& a) {
  if (!a.has_states()) return false;
  const auto adj = adjacency(a);
  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> colour(a.state_count(), White);
  std::vector<std::pair<StateId, std::size_t>> stack;
  for (StateId root = 0; root < a.state_count(); ++root) {
    if (colour[root] != White) continue;
    stack.emplace_back(root, 0);
    colour[root] = Grey;
    while (!stack.empty()) {
      auto& [q, next] = stack.back();
      if (next < adj[q].size()) {
        const StateId r = adj[q][next++];
        if (colour[r] == Grey) return true;
        if (colour[r] == White) {
          colour[r] = Grey;
          stack.emplace_back(r, 0);
        }
      } else {
        colour[q] = Black;
        stack.pop_back();
      }
    }
  }
  return false;
}

/// States in reverse topological order (successors before predecessors).
/// Requires an acyclic automaton.
std::vector<StateId> reverse_topological(const Automaton& a) {
  const auto adj = adjacency(a);
  std::vector<std::uint8_t> seen(a.state_count(), 0);
  std::vector<StateId> order;
  order.reserve(a.state_count());
  std::vector<std::pair<StateId, std::size_t>> stack;
  for (StateId root = 0; root < a.state_count(); ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [q, next] = stack.back();
      if (next < adj[q].size()) {
        const StateId r = adj[q][next++];
        if (!seen[r]) {
          seen[r] = 1;
          stack.emplace_back(r, 0);
        }
      } else {
        order.push_back(q);
        stack.pop_back();
      }
    }
  }
  return order;
}

void require_same_alphabet(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet() == b.alphabet())) {
    throw Error(ErrorCode::AlphabetMismatch, "automata are over different alphabets");
  }
}

}  // namespace

bool is_deterministic(const Automaton& a) {
  const auto ts = a.transitions();
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (ts[i].from == ts[i - 1].from && ts[i].symbol == ts[i - 1].symbol) return false;
  }
  return true;
}

Automaton determinize(const Automaton& a) {
  const std::size_t sigma = a.alphabet().size();
  std::vector<StateSet> subsets;
  StateSetIndex ids;
  std::vector<Transition> transitions;

  StateSet start;
  if (a.has_states()) start.push_back(a.initial());
  ids.emplace(start, 0);
  subsets.push_back(std::move(start));

  std::vector<std::uint8_t> mark(a.state_count(), 0);
  StateSet next;
  for (StateId id = 0; id < subsets.size(); ++id) {
    for (SymbolId s = 0; s < sigma; ++s) {
      next.clear();
      for (StateId q : subsets[id]) {
        for (StateId r : a.successors(q, s)) {
          if (!mark[r]) {
            mark[r] = 1;
            next.push_back(r);
          }
        }
      }
      for (StateId r : next) mark[r] = 0;
      std::sort(next.begin(), next.end());
      auto [it, inserted] = ids.try_emplace(next, static_cast<StateId>(subsets.size()));
      if (inserted) subsets.push_back(next);
      transitions.push_back({id, s, it->second});
    }
  }

  std::vector<StateId> finals;
  for (StateId id = 0; id < subsets.size(); ++id) {
    if (std::any_of(subsets[id].begin(), subsets[id].end(), [&](StateId q) { return a.is_final(q); })) {
      finals.push_back(id);
    }
  }
  return Automaton(a.alphabet(), subsets.size(), 0, std::move(finals), std::move(transitions));
}

Automaton product_intersection(std::span<const Automaton> automata) {
  if (automata.empty()) throw Error(ErrorCode::EmptyInput, "product of an empty sequence");
  for (const auto& a : automata) require_same_alphabet(automata.front(), a);
  const Alphabet& alphabet = automata.front().alphabet();
  for (const auto& a : automata) {
    if (!a.has_states()) return Automaton::empty_language(alphabet);
  }

  const std::size_t k = automata.size();
  std::vector<StateSet> tuples;
  StateSetIndex ids;
  std::vector<Transition> transitions;

  StateSet start(k);
  for (std::size_t i = 0; i < k; ++i) start[i] = automata[i].initial();
  ids.emplace(start, 0);
  tuples.push_back(std::move(start));

  std::vector<std::span<const StateId>> succ(k);
  std::vector<std::size_t> pos(k);
  StateSet target(k);
  for (StateId id = 0; id < tuples.size(); ++id) {
    for (SymbolId s = 0; s < alphabet.size(); ++s) {
      bool dead = false;
      for (std::size_t i = 0; i < k; ++i) {
        succ[i] = automata[i].successors(tuples[id][i], s);
        if (succ[i].empty()) dead = true;
      }
      if (dead) continue;
      std::fill(pos.begin(), pos.end(), 0);
      while (true) {
        for (std::size_t i = 0; i < k; ++i) target[i] = succ[i][pos[i]];
        auto [it, inserted] = ids.try_emplace(target, static_cast<StateId>(tuples.size()));
        if (inserted) tuples.push_back(target);
        transitions.push_back({id, s, it->second});
        std::size_t i = k;
        while (i > 0 && ++pos[i - 1] == succ[i - 1].size()) {
          pos[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
    }
  }

  std::vector<StateId> finals;
  for (StateId id = 0; id < tuples.size(); ++id) {
    bool all = true;
    for (std::size_t i = 0; i < k && all; ++i) all = automata[i].is_final(tuples[id][i]);
    if (all) finals.push_back(id);
  }
  return Automaton(alphabet, tuples.size(), 0, std::move(finals), std::move(transitions));
}

Automaton trim(const Automaton& a) {
  if (!a.has_states()) return a;
  const std::size_t n = a.state_count();
  std::vector<std::vector<StateId>> fwd(n), bwd(n);
  for (const auto& t : a.transitions()) {
    fwd[t.from].push_back(t.to);
    bwd[t.to].push_back(t.from);
  }
  auto sweep = [n](const std::vector<std::vector<StateId>>& adj, std::vector<StateId> roots) {
    std::vector<std::uint8_t> seen(n, 0);
    for (auto r : roots) seen[r] = 1;
    while (!roots.empty()) {
      const StateId q = roots.back();
      roots.pop_back();
      for (auto r : adj[q]) {
        if (!seen[r]) {
          seen[r] = 1;
          roots.push_back(r);
        }
      }
    }
    return seen;
  };
  const auto reachable = sweep(fwd, {a.initial()});
  const auto coreachable = sweep(bwd, std::vector<StateId>(a.finals().begin(), a.finals().end()));
  if (!reachable[a.initial()] || !coreachable[a.initial()]) {
    return Automaton::empty_language(a.alphabet());
  }

  constexpr StateId kDropped = UINT32_MAX;
  std::vector<StateId> renumber(n, kDropped);
  StateId next = 0;
  for (StateId q = 0; q < n; ++q) {
    if (reachable[q] && coreachable[q]) renumber[q] = next++;
  }
  std::vector<StateId> finals;
  for (auto f : a.finals()) {
    if (renumber[f] != kDropped) finals.push_back(renumber[f]);
  }
  std::vector<Transition> transitions;
  for (const auto& t : a.transitions()) {
    if (renumber[t.from] != kDropped && renumber[t.to] != kDropped) {
      transitions.push_back({renumber[t.from], t.symbol, renumber[t.to]});
    }
  }
  return Automaton(a.alphabet(), next, renumber[a.initial()], std::move(finals), std::move(transitions));
}

bool is_empty(const Automaton& a) { return !trim(a).has_states(); }

bool is_finite(const Automaton& a) { return !has_cycle(trim(a)); }

Count cardinality(const Automaton& a) {
  const Automaton d = trim(determinize(a));
  if (!d.has_states()) return Count(0);
  if (has_cycle(d)) return Count::infinite();
  std::vector<BigNat> words(d.state_count());
  for (StateId q : reverse_topological(d)) {
    BigNat total = d.is_final(q) ? 1 : 0;
    for (SymbolId s = 0; s < d.alphabet().size(); ++s) {
      for (StateId r : d.successors(q, s)) total += words[r];
    }
    words[q] = std::move(total);
  }
  return Count(words[d.initial()]);
}

std::optional<Count> longest_word_length(const Automaton& a) {
  const Automaton t = trim(a);
  if (!t.has_states()) return std::nullopt;
  if (has_cycle(t)) return Count::infinite();
  // In a trimmed automaton every state reaches a final state, so the
  // longest path to a final state is well defined.
  std::vector<std::size_t> longest(t.state_count(), 0);
  for (StateId q : reverse_topological(t)) {
    std::size_t best = 0;
    for (SymbolId s = 0; s < t.alphabet().size(); ++s) {
      for (StateId r : t.successors(q, s)) best = std::max(best, longest[r] + 1);
    }
    longest[q] = best;
  }
  return Count(static_cast<unsigned long long>(longest[t.initial()]));
}

bool member(const Automaton& a, std::span<const SymbolId> w) {
  if (!a.has_states()) return false;
  for (auto s : w) {
    if (s >= a.alphabet().size()) throw Error(ErrorCode::UnknownSymbol, "symbol id out of range");
  }
  std::vector<std::uint8_t> mark(a.state_count(), 0);
  StateSet current{a.initial()}, next;
  for (auto s : w) {
    next.clear();
    for (StateId q : current) {
      for (StateId r : a.successors(q, s)) {
        if (!mark[r]) {
          mark[r] = 1;
          next.push_back(r);
        }
      }
    }
    for (StateId r : next) mark[r] = 0;
    current.swap(next);
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(), [&](StateId q) { return a.is_final(q); });
}

bool member(const Automaton& a, const Word& w) { return member(a, a.alphabet().encode(w)); }

std::vector<EncodedWord> enumerate_encoded(const Automaton& a, std::size_t max_len,
                                           std::optional<std::size_t> max_count) {
  std::vector<EncodedWord> out;
  if (max_count && *max_count == 0) return out;
  const Automaton d = trim(determinize(a));
  if (!d.has_states()) return out;
  const std::size_t n = d.state_count();
  const std::size_t sigma = d.alphabet().size();

  // reach[r * n + q]: some word of length exactly r leads from q to a final state.
  std::vector<std::uint8_t> reach((max_len + 1) * n, 0);
  for (StateId q = 0; q < n; ++q) reach[q] = d.is_final(q) ? 1 : 0;
  for (std::size_t r = 1; r <= max_len; ++r) {
    for (StateId q = 0; q < n; ++q) {
      for (SymbolId s = 0; s < sigma && !reach[r * n + q]; ++s) {
        if (auto to = d.step(q, s)) reach[r * n + q] = reach[(r - 1) * n + *to];
      }
    }
  }

  EncodedWord word;
  std::vector<StateId> path;
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (!reach[len * n + d.initial()]) continue;
    // Depth-first in symbol order yields lexicographic order within a length.
    word.clear();
    path.assign(1, d.initial());
    std::vector<SymbolId> cursor(1, 0);
    while (!cursor.empty()) {
      const std::size_t depth = word.size();
      if (depth == len) {
        out.push_back(word);
        if (max_count && out.size() >= *max_count) return out;
        cursor.pop_back();
        path.pop_back();
        if (!word.empty()) word.pop_back();
        continue;
      }
      SymbolId& s = cursor.back();
      bool descended = false;
      while (s < sigma) {
        const SymbolId sym = s++;
        auto to = d.step(path.back(), sym);
        if (to && reach[(len - depth - 1) * n + *to]) {
          word.push_back(sym);
          path.push_back(*to);
          cursor.push_back(0);
          descended = true;
          break;
        }
      }
      if (!descended) {
        cursor.pop_back();
        path.pop_back();
        if (!word.empty()) word.pop_back();
      }
    }
  }
  return out;
}

std::vector<Word> enumerate(const Automaton& a, std::size_t max_len, std::optional<std::size_t> max_count) {
  std::vector<Word> out;
  for (const auto& w : enumerate_encoded(a, max_len, max_count)) out.push_back(a.alphabet().decode(w));
  return out;
}

Automaton complement(const Automaton& a) {
  const Automaton d = determinize(a);
  std::vector<StateId> finals;
  for (StateId q = 0; q < d.state_count(); ++q) {
    if (!d.is_final(q)) finals.push_back(q);
  }
  return Automaton(d.alphabet(), d.state_count(), d.initial(), std::move(finals),
                   std::vector<Transition>(d.transitions().begin(), d.transitions().end()));
}

bool is_subset(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  const Automaton parts[] = {a, complement(b)};
  return is_empty(product_intersection(parts));
}

}  // namespace langgen
