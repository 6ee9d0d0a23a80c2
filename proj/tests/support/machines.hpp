#pragma once

#include <string>
#include <vector>

#include "langgen/tm.hpp"

namespace machines {

using langgen::Alphabet;
using langgen::tm::Move;
using langgen::tm::Rule;
using langgen::tm::TuringMachine;

// Tape alphabet {_, 1} with blank _ (id 0) and 1 (id 1).
inline Alphabet tape() { return Alphabet({"_", "1"}); }

/// Initial state halting: t = 1.
inline TuringMachine halt_t1() { return TuringMachine(tape(), 0, 1, 0, {0}, {}); }

/// (0,_) -> (1,1,R): t = 2, C_2 = 1 [1,_].
inline TuringMachine halt_t2() {
  return TuringMachine(tape(), 0, 2, 0, {1}, {{{0, 0}, Rule{1, 1, Move::Right}}});
}

/// Writes 1, steps right, comes back: t = 3.
inline TuringMachine halt_t3() {
  return TuringMachine(tape(), 0, 3, 0, {2},
                       {{{0, 0}, Rule{1, 1, Move::Right}}, {{1, 0}, Rule{2, 1, Move::Left}}});
}

/// Right, left, right with a rewrite: t = 4, final tape _ 1.
inline TuringMachine halt_t4() {
  return TuringMachine(tape(), 0, 4, 0, {3},
                       {{{0, 0}, Rule{1, 1, Move::Right}},
                        {{1, 0}, Rule{2, 1, Move::Left}},
                        {{2, 1}, Rule{3, 0, Move::Right}}});
}

/// Runs right forever over blanks; state 1 is halting but unreachable.
inline TuringMachine loop_right() {
  return TuringMachine(tape(), 0, 2, 0, {1}, {{{0, 0}, Rule{0, 0, Move::Right}}});
}

/// Bounces between cells 0 and 1 forever; state 2 is halting but unreachable.
inline TuringMachine loop_bounce() {
  return TuringMachine(tape(), 0, 3, 0, {2},
                       {{{0, 0}, Rule{1, 1, Move::Right}},
                        {{1, 0}, Rule{0, 0, Move::Left}},
                        {{0, 1}, Rule{1, 1, Move::Right}}});
}

/// Moves left off cell 0 and stalls.
inline TuringMachine stall_left() {
  return TuringMachine(tape(), 0, 2, 0, {1}, {{{0, 0}, Rule{0, 1, Move::Left}}});
}

/// Writes three 1s moving right, then halts: t = 4.
inline TuringMachine write_three() {
  return TuringMachine(tape(), 0, 4, 0, {3},
                       {{{0, 0}, Rule{1, 1, Move::Right}},
                        {{1, 0}, Rule{2, 1, Move::Right}},
                        {{2, 0}, Rule{3, 1, Move::Right}}});
}

struct Named {
  std::string name;
  TuringMachine machine;
  std::size_t halting_configs;  // 0 when the machine never halts
};

inline std::vector<Named> halting_suite() {
  return {{"halt_t1", halt_t1(), 1}, {"halt_t2", halt_t2(), 2}, {"halt_t3", halt_t3(), 3}, {"halt_t4", halt_t4(), 4}};
}

inline std::vector<Named> looping_suite() {
  return {{"loop_right", loop_right(), 0}, {"loop_bounce", loop_bounce(), 0}, {"stall_left", stall_left(), 0}};
}

}  // namespace machines
