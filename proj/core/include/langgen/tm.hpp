#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "langgen/automaton.hpp"
#include "langgen/count.hpp"
#include "langgen/grammar.hpp"
#include "langgen/pda.hpp"

namespace langgen::tm {

enum class Move { Left, Right };

struct Rule {
  StateId next = 0;
  SymbolId write = 0;
  Move move = Move::Right;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Deterministic single-tape machine started on an all-blank, right-infinite
/// tape. Rules are partial: a non-halting state without a rule for the
/// scanned symbol is stuck.
class TuringMachine {
 public:
  using RuleMap = std::map<std::pair<StateId, SymbolId>, Rule>;

  /// Throws InvalidMachine. Tape symbols may not begin with '[' or '#',
  /// which are reserved for head and delimiter symbols.
  TuringMachine(Alphabet tape, SymbolId blank, std::size_t state_count, StateId initial,
                std::vector<StateId> halting, RuleMap rules);

  const Alphabet& tape_alphabet() const noexcept { return tape_; }
  SymbolId blank() const noexcept { return blank_; }
  std::size_t state_count() const noexcept { return state_count_; }
  StateId initial() const noexcept { return initial_; }
  bool is_halting(StateId q) const { return halting_.at(q) != 0; }
  std::vector<StateId> halting_states() const;
  const RuleMap& rules() const noexcept { return rules_; }
  const Rule* rule(StateId q, SymbolId a) const;

 private:
  Alphabet tape_;
  SymbolId blank_;
  std::size_t state_count_;
  StateId initial_;
  std::vector<std::uint8_t> halting_;
  RuleMap rules_;
};

/// Tape cells 0..tape.size()-1 (rightmost visited cell last).
struct Configuration {
  StateId state = 0;
  std::size_t head = 0;
  std::vector<SymbolId> tape;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const TuringMachine& m);

/// One step; nullopt when c is halting, stuck, or moves left off cell 0.
std::optional<Configuration> step(const TuringMachine& m, const Configuration& c);

enum class RunOutcome { Halted, Stalled, Timeout };

struct RunResult {
  RunOutcome outcome = RunOutcome::Timeout;
  /// C_1 ... C_t; ends at the halting configuration when outcome is Halted.
  std::vector<Configuration> history;

  std::size_t configs() const noexcept { return history.size(); }
};

/// Simulates until a halting state is entered or max_configs configurations
/// have been produced.
RunResult run(const TuringMachine& m, std::size_t max_configs);

enum class Prognosis { Halts, NeverHalts, Unknown };

struct Forecast {
  Prognosis prognosis = Prognosis::Unknown;
  std::size_t configs = 0;  // t when the machine halts
  std::string evidence;
};

/// Runs m for at most max_configs configurations looking for a halt or a
/// proof of non-termination: a stuck configuration, a repeated
/// configuration, or a repeated state at a freshly opened tape cell with the
/// head never having returned left of the earlier one.
Forecast forecast(const TuringMachine& m, std::size_t max_configs);

// Symbols of history words: tape symbols, head symbols "[q,a]", and the
// delimiters "#0" and "#1".
std::string head_symbol(const TuringMachine& m, StateId q, SymbolId a);
Alphabet history_alphabet(const TuringMachine& m);
Word configuration_word(const TuringMachine& m, const Configuration& c);

/// C_1 #b_1 C_2^R #b_2 C_3 #b_3 ... with odd configurations forward and even
/// ones reversed. bits[i] selects the delimiter after C_{i+1}.
Word history_word(const TuringMachine& m, const std::vector<Configuration>& history,
                  const std::vector<bool>& bits);

struct EncodedPair {
  /// Checks the initial configuration, the final halting configuration, and
  /// the steps (C_1,C_2), (C_3,C_4), ...
  Pda first;
  /// Checks block format and the steps (C_2,C_3), (C_4,C_5), ...
  Pda second;
};

/// Two PDAs whose intersection is exactly the set of history words of the
/// machine's halting run: 2^t words for a run of t configurations, none if
/// the machine does not halt.
EncodedPair encode(const TuringMachine& m);

/// Independent construction of the same set directly from a run. Empty when
/// the machine provably never halts; throws Timeout when undecided within
/// max_configs.
std::set<Word> history_words(const TuringMachine& m, std::size_t max_configs);

struct JointBudget {
  std::size_t max_configurations = 20'000'000;
};

/// Words of length <= max_len accepted by both PDAs, by simulating them in
/// lockstep over every surviving input prefix. Throws AlphabetMismatch or
/// CapExceeded.
std::set<Word> joint_intersection(const Pda& first, const Pda& second, std::size_t max_len,
                                  JointBudget budget = {});

/// Oracle choice for the halting-reduction driver: none, an explicit m, or
/// an m computed by running the machine.
struct AutoOracle {};
using OracleChoice = std::variant<std::monostate, BigNat, AutoOracle>;

struct DriverBudget {
  std::size_t max_configs = 200'000;
  CfgBudget grammar;
};

struct HaltingVerdict {
  bool halts = false;
  std::size_t configs = 0;     // t when halts
  int proof_case = 0;          // 1: L_1 finite, 2: L_2 finite, 3: oracle
  std::size_t bound = 0;       // configurations simulated
  Count first_size;
  std::optional<Count> second_size;
  std::optional<BigNat> oracle_m;
};

/// Decides halting from cardinalities of the encoded languages and an
/// m-generatability oracle: finite L_1 (or L_2) caps |L_1 ∩ L_2| = 2^t,
/// otherwise 2^t < m <= 2^T. The machine is then run for the resulting T
/// configurations only. Throws OracleRequired or ResourceCap.
HaltingVerdict decide_halting(const TuringMachine& m, const OracleChoice& oracle, DriverBudget budget = {});
/// Same driver over a caller-supplied encoding.
HaltingVerdict decide_halting(const TuringMachine& m, const EncodedPair& pdas, const OracleChoice& oracle,
                              DriverBudget budget = {});

}  // namespace langgen::tm
