#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "langgen/automaton.hpp"
#include "langgen/generatability.hpp"
#include "langgen/grammar.hpp"
#include "langgen/pda.hpp"
#include "langgen/tm.hpp"

namespace langgen::text {

// Line-oriented formats with whitespace-separated tokens. A line whose first
// non-blank character is '#' is a comment, as is everything after a token
// consisting of a lone '#'. Malformed input throws Error(Parse) with the
// offending line number.

struct NamedAutomaton {
  std::string name;
  Automaton automaton;
};

/// One or more `automaton ... end` blocks.
std::vector<NamedAutomaton> parse_automata(std::string_view text);
/// Exactly one block.
NamedAutomaton parse_automaton(std::string_view text);
/// Transitions sorted by (from, symbol index, to).
std::string format_automaton(const Automaton& a, std::string_view name);

FamilySpec parse_family(std::string_view text);
std::string format_family(const FamilySpec& f);

/// `grammar`, optional `alphabet` and `nonterminals` lines, `start`, `rule`
/// lines and `end`. Without an alphabet line the terminals are the body
/// tokens that are not nonterminals, in order of first appearance.
Cfg parse_grammar(std::string_view text);
std::string format_grammar(const Cfg& g, std::string_view name);

Pda parse_pda(std::string_view text);
std::string format_pda(const Pda& p, std::string_view name);

tm::TuringMachine parse_tm(std::string_view text);
std::string format_tm(const tm::TuringMachine& m, std::string_view name);

/// Throw Error(Io).
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace langgen::text
