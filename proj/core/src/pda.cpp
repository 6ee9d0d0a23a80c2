#include "langgen/pda.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

#include "langgen/error.hpp"

namespace langgen {

Pda::Pda(Alphabet input, Alphabet stack, std::size_t state_count, StateId initial, StackSymbolId initial_stack,
         std::vector<StateId> finals, std::vector<PdaTransition> transitions)
    : input_(std::move(input)),
      stack_(std::move(stack)),
      state_count_(state_count),
      initial_(initial),
      initial_stack_(initial_stack),
      finals_(std::move(finals)),
      transitions_(std::move(transitions)) {
  if (state_count_ == 0) throw Error(ErrorCode::InvalidPda, "pushdown automaton needs at least one state");
  if (initial_ >= state_count_) throw Error(ErrorCode::InvalidPda, "initial state out of range");
  if (initial_stack_ >= stack_.size()) throw Error(ErrorCode::InvalidPda, "initial stack symbol not declared");
  std::sort(finals_.begin(), finals_.end());
  finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
  is_final_.assign(state_count_, 0);
  for (auto f : finals_) {
    if (f >= state_count_) throw Error(ErrorCode::InvalidPda, "final state out of range");
    is_final_[f] = 1;
  }
  for (const auto& t : transitions_) {
    if (t.from >= state_count_ || t.to >= state_count_) throw Error(ErrorCode::InvalidPda, "transition state out of range");
    if (t.input && *t.input >= input_.size()) throw Error(ErrorCode::InvalidPda, "transition input symbol not declared");
    if (t.top >= stack_.size()) throw Error(ErrorCode::InvalidPda, "transition stack symbol not declared");
    for (auto x : t.push) {
      if (x >= stack_.size()) throw Error(ErrorCode::InvalidPda, "pushed stack symbol not declared");
    }
    has_epsilon_ = has_epsilon_ || !t.input;
    max_push_ = std::max(max_push_, t.push.size());
  }
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());

  const std::size_t rows = state_count_ * stack_.size();
  move_offsets_.assign(rows + 1, 0);
  for (const auto& t : transitions_) ++move_offsets_[static_cast<std::size_t>(t.from) * stack_.size() + t.top + 1];
  for (std::size_t r = 0; r < rows; ++r) move_offsets_[r + 1] += move_offsets_[r];
  move_index_.assign(transitions_.size(), 0);
  std::vector<std::uint32_t> fill(move_offsets_.begin(), move_offsets_.end() - 1);
  for (std::uint32_t i = 0; i < transitions_.size(); ++i) {
    const auto& t = transitions_[i];
    move_index_[fill[static_cast<std::size_t>(t.from) * stack_.size() + t.top]++] = i;
  }
}

PdaCaps PdaCaps::for_length(const Pda& p, std::size_t len) {
  PdaCaps caps;
  caps.max_word_length = len;
  const std::size_t growth = std::max<std::size_t>(p.max_push(), 1);
  caps.max_stack = 2 + 2 * (len + 2) * growth;
  caps.max_configurations = 2'000'000;
  return caps;
}

bool pda_member(const Pda& p, std::span<const SymbolId> w, const PdaCaps& caps) {
  for (auto s : w) {
    if (s >= p.input_alphabet().size()) throw Error(ErrorCode::UnknownSymbol, "input symbol id out of range");
  }
  if (w.size() > caps.max_word_length) throw Error(ErrorCode::CapExceeded, "word longer than the configured cap");

  // Key layout: state, position, then the stack bottom-to-top.
  using Key = std::vector<std::uint32_t>;
  std::unordered_set<Key, boost::hash<Key>> seen;
  std::deque<Key> queue;
  auto push_config = [&](Key k) {
    if (seen.insert(k).second) queue.push_back(std::move(k));
  };
  push_config({p.initial(), 0, p.initial_stack()});
  bool capped = false;

  while (!queue.empty()) {
    Key cur = std::move(queue.front());
    queue.pop_front();
    const StateId q = cur[0];
    const std::size_t pos = cur[1];
    if (pos == w.size() && p.is_final(q)) return true;
    if (cur.size() == 2) continue;  // empty stack: no move possible
    const StackSymbolId top = cur.back();
    for (auto idx : p.moves(q, top)) {
      const auto& t = p.transitions()[idx];
      std::size_t next_pos = pos;
      if (t.input) {
        if (pos == w.size() || w[pos] != *t.input) continue;
        ++next_pos;
      }
      const std::size_t height = cur.size() - 3 + t.push.size();
      if (height > caps.max_stack) {
        capped = true;
        continue;
      }
      Key next(cur.begin(), cur.end() - 1);
      next[0] = t.to;
      next[1] = static_cast<std::uint32_t>(next_pos);
      next.insert(next.end(), t.push.rbegin(), t.push.rend());
      push_config(std::move(next));
    }
    if (seen.size() > caps.max_configurations) {
      throw Error(ErrorCode::CapExceeded, "configuration budget exhausted");
    }
  }
  if (capped) throw Error(ErrorCode::CapExceeded, "stack cap reached before membership was resolved");
  return false;
}

bool pda_member(const Pda& p, const Word& w, const PdaCaps& caps) {
  return pda_member(p, p.input_alphabet().encode(w), caps);
}

bool pda_member(const Pda& p, const Word& w) { return pda_member(p, w, PdaCaps::for_length(p, w.size())); }

Cfg pda_to_cfg(const Pda& p) {
  // Empty-stack machine: fresh start state and bottom marker, plus a drain
  // state reachable from every final state.
  const std::size_t n = p.state_count() + 2;
  const StateId start = static_cast<StateId>(p.state_count());
  const StateId drain = start + 1;
  std::vector<std::string> stack_names = p.stack_alphabet().symbols();
  std::string bottom = "<bottom>";
  while (p.stack_alphabet().find(bottom)) bottom += "'";
  stack_names.push_back(bottom);
  const std::size_t gamma = stack_names.size();
  const StackSymbolId bottom_id = static_cast<StackSymbolId>(gamma - 1);

  std::vector<PdaTransition> moves(p.transitions().begin(), p.transitions().end());
  moves.push_back({start, std::nullopt, bottom_id, p.initial(), {p.initial_stack(), bottom_id}});
  for (StackSymbolId x = 0; x < gamma; ++x) {
    for (auto f : p.finals()) moves.push_back({f, std::nullopt, x, drain, {}});
    moves.push_back({drain, std::nullopt, x, drain, {}});
  }

  // by_source[(q, X)] = transitions popping X in q.
  std::vector<std::vector<const PdaTransition*>> by_source(n * gamma);
  for (const auto& t : moves) by_source[t.from * gamma + t.top].push_back(&t);

  // Realizable triples: from q with X on top, X can be popped ending in r.
  auto triple = [&](std::size_t q, std::size_t x, std::size_t r) { return (q * gamma + x) * n + r; };
  std::vector<std::uint8_t> realizable(n * gamma * n, 0);
  std::vector<std::vector<StateId>> pops(n * gamma);  // (q, X) -> end states
  auto ends_of = [&](const PdaTransition& t) {
    std::vector<std::uint8_t> cur(n, 0);
    cur[t.to] = 1;
    for (auto y : t.push) {
      std::vector<std::uint8_t> next(n, 0);
      for (StateId s = 0; s < n; ++s) {
        if (cur[s]) {
          for (auto e : pops[s * gamma + y]) next[e] = 1;
        }
      }
      cur.swap(next);
    }
    return cur;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : moves) {
      const auto ends = ends_of(t);
      for (StateId r = 0; r < n; ++r) {
        if (ends[r] && !realizable[triple(t.from, t.top, r)]) {
          realizable[triple(t.from, t.top, r)] = 1;
          pops[t.from * gamma + t.top].push_back(r);
          changed = true;
        }
      }
    }
  }

  auto fresh_name = [&](std::string name) {
    while (p.input_alphabet().find(name)) name += "'";
    return name;
  };
  std::vector<std::string> names{fresh_name("S")};
  std::map<std::size_t, std::uint32_t> nt_of_triple;
  std::vector<std::size_t> todo;
  auto nonterminal = [&](std::size_t q, std::size_t x, std::size_t r) {
    const std::size_t key = triple(q, x, r);
    auto [it, inserted] = nt_of_triple.try_emplace(key, static_cast<std::uint32_t>(names.size()));
    if (inserted) {
      names.push_back(fresh_name("[" + std::to_string(q) + "," + stack_names[x] + "," + std::to_string(r) + "]"));
      todo.push_back(key);
    }
    return it->second;
  };

  std::vector<Production> productions;
  for (StateId r = 0; r < n; ++r) {
    if (realizable[triple(start, bottom_id, r)]) {
      productions.push_back({0, {{false, nonterminal(start, bottom_id, r)}}});
    }
  }
  while (!todo.empty()) {
    const std::size_t key = todo.back();
    todo.pop_back();
    const std::size_t r = key % n;
    const std::size_t x = (key / n) % gamma;
    const std::size_t q = key / n / gamma;
    const std::uint32_t lhs = nt_of_triple.at(key);
    for (const PdaTransition* t : by_source[q * gamma + x]) {
      // Enumerate state chains t->to = s0, s1, ..., s_m = r through realizable pops.
      std::vector<StateId> chain{t->to};
      auto emit = [&](auto&& self) -> void {
        const std::size_t depth = chain.size() - 1;
        if (depth == t->push.size()) {
          if (chain.back() != r) return;
          Production prod{lhs, {}};
          if (t->input) prod.body.push_back({true, *t->input});
          for (std::size_t i = 0; i < t->push.size(); ++i) {
            prod.body.push_back({false, nonterminal(chain[i], t->push[i], chain[i + 1])});
          }
          productions.push_back(std::move(prod));
          return;
        }
        const auto y = t->push[depth];
        for (auto e : pops[chain.back() * gamma + y]) {
          if (depth + 1 == t->push.size() && e != r) continue;
          chain.push_back(e);
          self(self);
          chain.pop_back();
        }
      };
      emit(emit);
    }
  }
  return cfg_reduce(Cfg(std::move(names), p.input_alphabet(), 0, std::move(productions)));
}

}  // namespace langgen
