#include "langgen/automaton.hpp"

#include <algorithm>

#include "langgen/error.hpp"

namespace langgen {

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  index_.reserve(symbols_.size());
  for (SymbolId i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) throw Error(ErrorCode::InvalidArgument, "empty symbol token");
    if (!index_.emplace(symbols_[i], i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate symbol '" + symbols_[i] + "'");
    }
  }
}

std::optional<SymbolId> Alphabet::find(std::string_view token) const {
  auto it = index_.find(Symbol(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SymbolId Alphabet::index_of(std::string_view token) const {
  if (auto id = find(token)) return *id;
  throw Error(ErrorCode::UnknownSymbol, "symbol '" + std::string(token) + "' not in alphabet");
}

EncodedWord Alphabet::encode(const Word& word) const {
  EncodedWord out;
  out.reserve(word.size());
  for (const auto& s : word) out.push_back(index_of(s));
  return out;
}

Word Alphabet::decode(const EncodedWord& word) const {
  Word out;
  out.reserve(word.size());
  for (auto id : word) out.push_back(symbols_.at(id));
  return out;
}

Automaton::Automaton(Alphabet alphabet) : alphabet_(std::move(alphabet)), offsets_(1, 0) {}

Automaton Automaton::empty_language(Alphabet alphabet) { return Automaton(std::move(alphabet)); }

Automaton::Automaton(Alphabet alphabet, std::size_t state_count, StateId initial,
                     std::vector<StateId> finals, std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)),
      state_count_(state_count),
      initial_(initial),
      finals_(std::move(finals)),
      transitions_(std::move(transitions)) {
  if (state_count_ == 0) {
    if (!finals_.empty() || !transitions_.empty()) {
      throw Error(ErrorCode::InvalidAutomaton, "zero-state automaton with finals or transitions");
    }
    offsets_.assign(1, 0);
    return;
  }
  if (state_count_ > UINT32_MAX / 2) throw Error(ErrorCode::InvalidAutomaton, "too many states");
  if (initial_ >= state_count_) {
    throw Error(ErrorCode::InvalidAutomaton, "initial state out of range");
  }
  std::sort(finals_.begin(), finals_.end());
  finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
  is_final_.assign(state_count_, 0);
  for (auto f : finals_) {
    if (f >= state_count_) throw Error(ErrorCode::InvalidAutomaton, "final state out of range");
    is_final_[f] = 1;
  }
  for (const auto& t : transitions_) {
    if (t.from >= state_count_ || t.to >= state_count_) {
      throw Error(ErrorCode::InvalidAutomaton, "transition state out of range");
    }
    if (t.symbol >= alphabet_.size()) {
      throw Error(ErrorCode::InvalidAutomaton, "transition symbol not in alphabet");
    }
  }
  std::sort(transitions_.begin(), transitions_.end());
  if (std::adjacent_find(transitions_.begin(), transitions_.end()) != transitions_.end()) {
    throw Error(ErrorCode::InvalidAutomaton, "duplicate transition");
  }

  const std::size_t rows = state_count_ * alphabet_.size();
  offsets_.assign(rows + 1, 0);
  targets_.reserve(transitions_.size());
  for (const auto& t : transitions_) {
    ++offsets_[static_cast<std::size_t>(t.from) * alphabet_.size() + t.symbol + 1];
    targets_.push_back(t.to);
  }
  for (std::size_t r = 0; r < rows; ++r) offsets_[r + 1] += offsets_[r];
}

StateId Automaton::initial() const {
  if (state_count_ == 0) throw Error(ErrorCode::InvalidAutomaton, "zero-state automaton has no initial state");
  return initial_;
}

}  // namespace langgen
