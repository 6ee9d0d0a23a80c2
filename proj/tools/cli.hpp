#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "langgen/automaton.hpp"

namespace langgen::cli {

/// Runs one invocation. args excludes the program name. Results go to out,
/// diagnostics to err. Returns 0 on success, 1 on domain errors, 2 on usage,
/// I/O or parse errors, and 3 when a resource cap is hit.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Command-line word syntax: "@" is the empty word; tokens are separated by
/// '.'; without a '.', a word over an alphabet of single-character symbols
/// is split into characters and otherwise read as one token.
Word parse_word(const std::string& text, const Alphabet& alphabet);
std::vector<Word> parse_word_list(const std::string& text, const Alphabet& alphabet);
std::string format_word(const Word& w, const Alphabet& alphabet);

}  // namespace langgen::cli
