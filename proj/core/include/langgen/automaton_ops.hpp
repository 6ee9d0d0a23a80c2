#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "langgen/automaton.hpp"
#include "langgen/count.hpp"

namespace langgen {

/// True iff no (state, symbol) pair has two outgoing transitions.
bool is_deterministic(const Automaton& a);

/// Subset construction over reachable subsets. The result is deterministic,
/// complete over a's alphabet and accepts L(a). State 0 is the initial subset;
/// remaining states are numbered in breadth-first discovery order with
/// symbols explored in alphabet order.
Automaton determinize(const Automaton& a);

/// Synchronous product over reachable state tuples; accepts the intersection
/// of the operands' languages. Throws EmptyInput / AlphabetMismatch.
Automaton product_intersection(std::span<const Automaton> automata);

/// Restricts a to states lying on some initial-to-final path. Returns the
/// zero-state automaton when L(a) is empty.
Automaton trim(const Automaton& a);

bool is_empty(const Automaton& a);

/// True iff L(a) is finite: the trimmed transition graph is acyclic.
bool is_finite(const Automaton& a);

/// Exact |L(a)| or infinite. Determinizes first so that accepting paths
/// are in bijection with words.
Count cardinality(const Automaton& a);

/// nullopt for the empty language, infinite for infinite languages,
/// otherwise the length of the longest accepted word.
std::optional<Count> longest_word_length(const Automaton& a);

/// Throws UnknownSymbol if w uses a symbol outside a's alphabet.
bool member(const Automaton& a, const Word& w);
bool member(const Automaton& a, std::span<const SymbolId> w);

/// Accepted words of length <= max_len in shortlex order, truncated after
/// max_count words when given.
std::vector<Word> enumerate(const Automaton& a, std::size_t max_len,
                            std::optional<std::size_t> max_count = std::nullopt);
std::vector<EncodedWord> enumerate_encoded(const Automaton& a, std::size_t max_len,
                                           std::optional<std::size_t> max_count = std::nullopt);

/// L(a) is a subset of L(b). Both must share an alphabet.
bool is_subset(const Automaton& a, const Automaton& b);

/// Complement relative to the alphabet's free monoid.
Automaton complement(const Automaton& a);

}  // namespace langgen
