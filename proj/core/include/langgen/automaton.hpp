#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace langgen {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;

/// Symbols are opaque tokens; a single symbol may span several characters
/// (for example the composite head symbol "[2,1]").
using Symbol = std::string;
using Word = std::vector<Symbol>;
using EncodedWord = std::vector<SymbolId>;

/// An ordered sequence of distinct symbols. The order defines shortlex order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const Symbol& operator[](SymbolId id) const { return symbols_.at(id); }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  std::optional<SymbolId> find(std::string_view token) const;
  /// Throws UnknownSymbol.
  SymbolId index_of(std::string_view token) const;
  EncodedWord encode(const Word& word) const;
  Word decode(const EncodedWord& word) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<Symbol, SymbolId> index_;
};

struct Transition {
  StateId from = 0;
  SymbolId symbol = 0;
  StateId to = 0;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Nondeterministic finite acceptor without epsilon moves. Partial transition
/// functions are allowed; a missing transition rejects.
///
/// A zero-state automaton is the canonical empty-language acceptor; it has no
/// initial state and initial() must not be called on it.
///
/// Immutable after construction. Transitions are kept sorted by
/// (from, symbol, to).
class Automaton {
 public:
  /// Validates ids and symbols; rejects duplicate transitions (InvalidAutomaton).
  Automaton(Alphabet alphabet, std::size_t state_count, StateId initial,
            std::vector<StateId> finals, std::vector<Transition> transitions);

  static Automaton empty_language(Alphabet alphabet);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return state_count_; }
  bool has_states() const noexcept { return state_count_ > 0; }
  StateId initial() const;
  bool is_final(StateId q) const { return is_final_[q] != 0; }
  std::span<const StateId> finals() const noexcept { return finals_; }
  std::span<const Transition> transitions() const noexcept { return transitions_; }

  /// Targets of q on symbol a, ascending.
  std::span<const StateId> successors(StateId q, SymbolId a) const {
    const std::size_t row = static_cast<std::size_t>(q) * alphabet_.size() + a;
    return {targets_.data() + offsets_[row], targets_.data() + offsets_[row + 1]};
  }

  /// Unique target of q on a for deterministic automata; nullopt if none.
  std::optional<StateId> step(StateId q, SymbolId a) const {
    auto s = successors(q, a);
    if (s.empty()) return std::nullopt;
    return s.front();
  }

 private:
  Automaton(Alphabet alphabet);

  Alphabet alphabet_;
  std::size_t state_count_ = 0;
  StateId initial_ = 0;
  std::vector<StateId> finals_;
  std::vector<std::uint8_t> is_final_;
  std::vector<Transition> transitions_;
  std::vector<std::uint32_t> offsets_;
  std::vector<StateId> targets_;
};

}  // namespace langgen
