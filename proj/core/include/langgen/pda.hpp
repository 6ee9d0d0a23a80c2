#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "langgen/automaton.hpp"
#include "langgen/grammar.hpp"

namespace langgen {

using StackSymbolId = std::uint32_t;

struct PdaTransition {
  StateId from = 0;
  std::optional<SymbolId> input;  // nullopt reads nothing
  StackSymbolId top = 0;
  StateId to = 0;
  /// Replaces the popped top; push.front() becomes the new top.
  std::vector<StackSymbolId> push;

  friend auto operator<=>(const PdaTransition&, const PdaTransition&) = default;
};

/// Pushdown acceptor. Acceptance is by final state after the whole input is
/// read, with any residual stack.
class Pda {
 public:
  /// Throws InvalidPda on undeclared states or symbols.
  Pda(Alphabet input, Alphabet stack, std::size_t state_count, StateId initial, StackSymbolId initial_stack,
      std::vector<StateId> finals, std::vector<PdaTransition> transitions);

  const Alphabet& input_alphabet() const noexcept { return input_; }
  const Alphabet& stack_alphabet() const noexcept { return stack_; }
  std::size_t state_count() const noexcept { return state_count_; }
  StateId initial() const noexcept { return initial_; }
  StackSymbolId initial_stack() const noexcept { return initial_stack_; }
  bool is_final(StateId q) const { return is_final_[q] != 0; }
  std::span<const StateId> finals() const noexcept { return finals_; }
  std::span<const PdaTransition> transitions() const noexcept { return transitions_; }
  bool has_epsilon_moves() const noexcept { return has_epsilon_; }
  std::size_t max_push() const noexcept { return max_push_; }

  /// Indices into transitions() leaving q with top X.
  std::span<const std::uint32_t> moves(StateId q, StackSymbolId top) const {
    const std::size_t row = static_cast<std::size_t>(q) * stack_.size() + top;
    return {move_index_.data() + move_offsets_[row], move_index_.data() + move_offsets_[row + 1]};
  }

 private:
  Alphabet input_;
  Alphabet stack_;
  std::size_t state_count_;
  StateId initial_;
  StackSymbolId initial_stack_;
  std::vector<StateId> finals_;
  std::vector<std::uint8_t> is_final_;
  std::vector<PdaTransition> transitions_;
  std::vector<std::uint32_t> move_offsets_;
  std::vector<std::uint32_t> move_index_;
  bool has_epsilon_ = false;
  std::size_t max_push_ = 0;
};

/// Bounds for configuration search. Exceeding any of them makes the result
/// unknown and is reported as CapExceeded.
struct PdaCaps {
  std::size_t max_stack = 0;
  std::size_t max_configurations = 0;
  std::size_t max_word_length = 0;

  /// Caps sufficient for exact answers on words up to len when every
  /// epsilon chain grows the stack by a bounded amount.
  static PdaCaps for_length(const Pda& p, std::size_t len);
};

/// Breadth-first search over (state, input position, stack) configurations
/// with duplicate elimination.
bool pda_member(const Pda& p, std::span<const SymbolId> w, const PdaCaps& caps);
bool pda_member(const Pda& p, const Word& w, const PdaCaps& caps);
/// Uses PdaCaps::for_length(p, w.size()).
bool pda_member(const Pda& p, const Word& w);

/// Compiles final-state acceptance to empty-stack acceptance, then applies
/// the triple construction with nonterminals [p,X,q] for pops of X from p
/// ending in q. Only realizable triples reachable from the start symbol are
/// emitted; the result is reduced.
Cfg pda_to_cfg(const Pda& p);

}  // namespace langgen
