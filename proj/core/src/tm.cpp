#include "langgen/tm.hpp"

#include <algorithm>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

#include "langgen/error.hpp"

namespace langgen::tm {

TuringMachine::TuringMachine(Alphabet tape, SymbolId blank, std::size_t state_count, StateId initial,
                             std::vector<StateId> halting, RuleMap rules)
    : tape_(std::move(tape)), blank_(blank), state_count_(state_count), initial_(initial), rules_(std::move(rules)) {
  if (state_count_ == 0) throw Error(ErrorCode::InvalidMachine, "machine needs at least one state");
  if (initial_ >= state_count_) throw Error(ErrorCode::InvalidMachine, "initial state out of range");
  if (blank_ >= tape_.size()) throw Error(ErrorCode::InvalidMachine, "blank symbol not in tape alphabet");
  for (const auto& s : tape_.symbols()) {
    if (s.front() == '[' || s.front() == '#') {
      throw Error(ErrorCode::InvalidMachine, "tape symbol '" + s + "' uses a reserved prefix");
    }
  }
  halting_.assign(state_count_, 0);
  for (auto h : halting) {
    if (h >= state_count_) throw Error(ErrorCode::InvalidMachine, "halting state out of range");
    halting_[h] = 1;
  }
  for (const auto& [key, r] : rules_) {
    const auto [q, a] = key;
    if (q >= state_count_ || r.next >= state_count_) throw Error(ErrorCode::InvalidMachine, "rule state out of range");
    if (a >= tape_.size() || r.write >= tape_.size()) throw Error(ErrorCode::InvalidMachine, "rule symbol out of range");
    if (halting_[q]) throw Error(ErrorCode::InvalidMachine, "rule leaves a halting state");
  }
}

std::vector<StateId> TuringMachine::halting_states() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < state_count_; ++q) {
    if (halting_[q]) out.push_back(q);
  }
  return out;
}

const Rule* TuringMachine::rule(StateId q, SymbolId a) const {
  auto it = rules_.find({q, a});
  return it == rules_.end() ? nullptr : &it->second;
}

Configuration initial_configuration(const TuringMachine& m) { return {m.initial(), 0, {m.blank()}}; }

std::optional<Configuration> step(const TuringMachine& m, const Configuration& c) {
  if (m.is_halting(c.state)) return std::nullopt;
  const Rule* r = m.rule(c.state, c.tape[c.head]);
  if (!r) return std::nullopt;
  if (r->move == Move::Left && c.head == 0) return std::nullopt;
  Configuration next = c;
  next.state = r->next;
  next.tape[c.head] = r->write;
  if (r->move == Move::Left) {
    --next.head;
  } else {
    ++next.head;
    if (next.head == next.tape.size()) next.tape.push_back(m.blank());
  }
  return next;
}

RunResult run(const TuringMachine& m, std::size_t max_configs) {
  if (max_configs < 1) throw Error(ErrorCode::InvalidArgument, "max_configs must be at least 1");
  RunResult result;
  result.history.push_back(initial_configuration(m));
  while (true) {
    const Configuration& last = result.history.back();
    if (m.is_halting(last.state)) {
      result.outcome = RunOutcome::Halted;
      return result;
    }
    if (result.history.size() >= max_configs) {
      result.outcome = RunOutcome::Timeout;
      return result;
    }
    auto next = step(m, last);
    if (!next) {
      result.outcome = RunOutcome::Stalled;
      return result;
    }
    result.history.push_back(std::move(*next));
  }
}

Forecast forecast(const TuringMachine& m, std::size_t max_configs) {
  struct ConfigHash {
    std::size_t operator()(const Configuration& c) const {
      std::size_t h = boost::hash_range(c.tape.begin(), c.tape.end());
      boost::hash_combine(h, c.state);
      boost::hash_combine(h, c.head);
      return h;
    }
  };
  std::unordered_set<Configuration, ConfigHash> seen;
  // Fresh-cell events still valid (head never went left of them), with
  // strictly increasing positions.
  struct Event {
    std::size_t pos;
    StateId state;
    std::size_t time;
  };
  std::vector<Event> events;
  std::vector<std::size_t> live_per_state(m.state_count(), 0);

  Configuration c = initial_configuration(m);
  for (std::size_t t = 1;; ++t) {
    if (m.is_halting(c.state)) return {Prognosis::Halts, t, "halting state entered"};
    if (!seen.insert(c).second) return {Prognosis::NeverHalts, 0, "configuration repeated at step " + std::to_string(t)};
    const bool fresh = c.head + 1 == c.tape.size() && c.tape[c.head] == m.blank() &&
                       (events.empty() || events.back().pos < c.head);
    if (fresh) {
      if (live_per_state[c.state] > 0) {
        return {Prognosis::NeverHalts, 0,
                "state " + std::to_string(c.state) + " repeats at fresh cells without moving back"};
      }
      events.push_back({c.head, c.state, t});
      ++live_per_state[c.state];
    }
    if (t >= max_configs) return {Prognosis::Unknown, 0, "budget exhausted"};
    auto next = step(m, c);
    if (!next) return {Prognosis::NeverHalts, 0, "stuck without halting"};
    c = std::move(*next);
    while (!events.empty() && events.back().pos > c.head) {
      --live_per_state[events.back().state];
      events.pop_back();
    }
  }
}

namespace {

struct Layout {
  std::size_t tape;
  std::size_t states;

  SymbolId head(StateId q, SymbolId a) const { return static_cast<SymbolId>(tape + q * tape + a); }
  SymbolId delimiter(int bit) const { return static_cast<SymbolId>(tape + states * tape + bit); }
  std::size_t config_symbols() const { return tape + states * tape; }
};

Layout layout_of(const TuringMachine& m) { return {m.tape_alphabet().size(), m.state_count()}; }

}  // namespace

std::string head_symbol(const TuringMachine& m, StateId q, SymbolId a) {
  return "[" + std::to_string(q) + "," + m.tape_alphabet()[a] + "]";
}

Alphabet history_alphabet(const TuringMachine& m) {
  std::vector<Symbol> symbols = m.tape_alphabet().symbols();
  for (StateId q = 0; q < m.state_count(); ++q) {
    for (SymbolId a = 0; a < m.tape_alphabet().size(); ++a) symbols.push_back(head_symbol(m, q, a));
  }
  symbols.push_back("#0");
  symbols.push_back("#1");
  return Alphabet(std::move(symbols));
}

Word configuration_word(const TuringMachine& m, const Configuration& c) {
  Word w;
  for (std::size_t i = 0; i < c.tape.size(); ++i) {
    w.push_back(i == c.head ? head_symbol(m, c.state, c.tape[i]) : m.tape_alphabet()[c.tape[i]]);
  }
  return w;
}

Word history_word(const TuringMachine& m, const std::vector<Configuration>& history, const std::vector<bool>& bits) {
  if (bits.size() != history.size()) throw Error(ErrorCode::InvalidArgument, "one delimiter bit per configuration");
  Word w;
  for (std::size_t i = 0; i < history.size(); ++i) {
    Word block = configuration_word(m, history[i]);
    if (i % 2 == 1) std::reverse(block.begin(), block.end());
    w.insert(w.end(), block.begin(), block.end());
    w.push_back(bits[i] ? "#1" : "#0");
  }
  return w;
}

EncodedPair encode(const TuringMachine& m) {
  const Layout lay = layout_of(m);
  const Alphabet input = history_alphabet(m);
  std::vector<Symbol> stack_symbols(input.symbols().begin(), input.symbols().begin() + lay.config_symbols());
  std::string bottom = "Z0";
  while (input.find(bottom)) bottom += "'";
  stack_symbols.push_back(bottom);
  const Alphabet stack(stack_symbols);
  const auto z0 = static_cast<StackSymbolId>(lay.config_symbols());
  const std::size_t q_count = m.state_count();
  const auto blank = m.blank();

  struct Step {
    StateId q;
    SymbolId a;
    Rule rule;
  };
  std::vector<Step> rules;
  for (const auto& [key, r] : m.rules()) rules.push_back({key.first, key.second, r});

  std::vector<PdaTransition> t1, t2;
  auto plain = [&](auto&& f) {
    for (SymbolId c = 0; c < lay.tape; ++c) f(c);
  };
  auto heads = [&](auto&& f) {
    for (StateId q = 0; q < q_count; ++q) {
      for (SymbolId a = 0; a < lay.tape; ++a) f(q, a, lay.head(q, a));
    }
  };
  auto any_top = [&](auto&& f) {
    for (StackSymbolId x = 0; x <= z0; ++x) f(x);
  };
  auto bits = [&](auto&& f) {
    f(lay.delimiter(0));
    f(lay.delimiter(1));
  };

  // First machine: odd pairs (C_1,C_2), (C_3,C_4), ...
  enum : StateId { Init, C1Read, InitFinal, OddStart, Push0, Push1, Fin0, Fin1, CmpStart, CmpBefore, AfterHalt, AfterRun, Accept1, First1 };
  auto cmp_r = [&](StateId q) { return static_cast<StateId>(First1 + q); };
  auto cmp_l = [&](StateId q) { return static_cast<StateId>(First1 + q_count + q); };
  auto after = [&](StateId q) { return m.is_halting(q) ? AfterHalt : AfterRun; };
  const SymbolId c1 = lay.head(m.initial(), blank);

  if (m.is_halting(m.initial())) {
    t1.push_back({Init, c1, z0, InitFinal, {z0}});
    bits([&](SymbolId d) { t1.push_back({InitFinal, d, z0, Accept1, {z0}}); });
  } else {
    t1.push_back({Init, c1, z0, C1Read, {c1, z0}});
    bits([&](SymbolId d) { t1.push_back({C1Read, d, c1, CmpStart, {c1}}); });
  }
  plain([&](SymbolId c) {
    t1.push_back({OddStart, c, z0, Push0, {c, z0}});
    t1.push_back({OddStart, c, z0, Fin0, {z0}});
    t1.push_back({Fin0, c, z0, Fin0, {z0}});
    t1.push_back({Fin1, c, z0, Fin1, {z0}});
  });
  heads([&](StateId q, SymbolId, SymbolId h) {
    t1.push_back({OddStart, h, z0, Push1, {h, z0}});
    if (m.is_halting(q)) {
      t1.push_back({OddStart, h, z0, Fin1, {z0}});
      t1.push_back({Fin0, h, z0, Fin1, {z0}});
    }
  });
  bits([&](SymbolId d) { t1.push_back({Fin1, d, z0, Accept1, {z0}}); });
  any_top([&](StackSymbolId x) {
    plain([&](SymbolId c) {
      t1.push_back({Push0, c, x, Push0, {c, x}});
      t1.push_back({Push1, c, x, Push1, {c, x}});
    });
    heads([&](StateId, SymbolId, SymbolId h) { t1.push_back({Push0, h, x, Push1, {h, x}}); });
    bits([&](SymbolId d) { t1.push_back({Push1, d, x, CmpStart, {x}}); });
  });
  // Comparison, right to left: pop C_odd while reading C_even reversed.
  for (StateId from : {CmpStart, CmpBefore}) {
    plain([&](SymbolId c) {
      t1.push_back({from, c, c, CmpBefore, {}});
      for (StateId q2 = 0; q2 < q_count; ++q2) t1.push_back({from, lay.head(q2, c), c, cmp_r(q2), {}});
    });
    for (const auto& s : rules) {
      if (s.rule.move == Move::Left) t1.push_back({from, s.rule.write, lay.head(s.q, s.a), cmp_l(s.rule.next), {}});
    }
  }
  for (const auto& s : rules) {
    if (s.rule.move != Move::Right) continue;
    const SymbolId x = lay.head(s.q, s.a);
    // Tape grew: the extra rightmost cell is read before any pop.
    t1.push_back({CmpStart, lay.head(s.rule.next, blank), x, cmp_r(s.rule.next), {x}});
    t1.push_back({cmp_r(s.rule.next), s.rule.write, x, after(s.rule.next), {}});
  }
  for (StateId q2 = 0; q2 < q_count; ++q2) {
    plain([&](SymbolId c) { t1.push_back({cmp_l(q2), lay.head(q2, c), c, after(q2), {}}); });
  }
  for (StateId a : {AfterHalt, AfterRun}) {
    plain([&](SymbolId c) { t1.push_back({a, c, c, a, {}}); });
    bits([&](SymbolId d) { t1.push_back({a, d, z0, OddStart, {z0}}); });
  }
  bits([&](SymbolId d) { t1.push_back({AfterHalt, d, z0, Accept1, {z0}}); });

  // Second machine: C_1 format, then even pairs (C_2,C_3), (C_4,C_5), ...
  enum : StateId { F0, F1, EvenStart, EPush0, EPush1, EFin0, EFin1, ECmp, EAfter, Accept2, First2 };
  auto cmp_r2 = [&](StateId q) { return static_cast<StateId>(First2 + q); };
  auto cmp_l2 = [&](StateId q) { return static_cast<StateId>(First2 + q_count + q); };
  plain([&](SymbolId c) {
    t2.push_back({F0, c, z0, F0, {z0}});
    t2.push_back({F1, c, z0, F1, {z0}});
    t2.push_back({EvenStart, c, z0, EPush0, {c, z0}});
    t2.push_back({EvenStart, c, z0, EFin0, {z0}});
    t2.push_back({EFin0, c, z0, EFin0, {z0}});
    t2.push_back({EFin1, c, z0, EFin1, {z0}});
  });
  heads([&](StateId, SymbolId, SymbolId h) {
    t2.push_back({F0, h, z0, F1, {z0}});
    t2.push_back({EvenStart, h, z0, EPush1, {h, z0}});
    t2.push_back({EvenStart, h, z0, EFin1, {z0}});
    t2.push_back({EFin0, h, z0, EFin1, {z0}});
  });
  bits([&](SymbolId d) {
    t2.push_back({F1, d, z0, EvenStart, {z0}});
    t2.push_back({F1, d, z0, Accept2, {z0}});
    t2.push_back({EFin1, d, z0, Accept2, {z0}});
  });
  any_top([&](StackSymbolId x) {
    plain([&](SymbolId c) {
      t2.push_back({EPush0, c, x, EPush0, {c, x}});
      t2.push_back({EPush1, c, x, EPush1, {c, x}});
    });
    heads([&](StateId, SymbolId, SymbolId h) { t2.push_back({EPush0, h, x, EPush1, {h, x}}); });
    bits([&](SymbolId d) { t2.push_back({EPush1, d, x, ECmp, {x}}); });
  });
  // Comparison, left to right: pop C_even (pushed reversed) while reading C_odd.
  plain([&](SymbolId c) {
    t2.push_back({ECmp, c, c, ECmp, {}});
    t2.push_back({EAfter, c, c, EAfter, {}});
    for (StateId q2 = 0; q2 < q_count; ++q2) {
      t2.push_back({ECmp, lay.head(q2, c), c, cmp_l2(q2), {}});
      t2.push_back({cmp_r2(q2), lay.head(q2, c), c, EAfter, {}});
    }
  });
  for (StateId q2 = 0; q2 < q_count; ++q2) {
    // Tape grew past the old rightmost cell.
    t2.push_back({cmp_r2(q2), lay.head(q2, blank), z0, EAfter, {z0}});
  }
  for (const auto& s : rules) {
    const SymbolId x = lay.head(s.q, s.a);
    if (s.rule.move == Move::Right) {
      t2.push_back({ECmp, s.rule.write, x, cmp_r2(s.rule.next), {}});
    } else {
      t2.push_back({cmp_l2(s.rule.next), s.rule.write, x, EAfter, {}});
    }
  }
  bits([&](SymbolId d) {
    t2.push_back({EAfter, d, z0, EvenStart, {z0}});
    t2.push_back({EAfter, d, z0, Accept2, {z0}});
  });

  Pda first(input, stack, First1 + 2 * q_count, Init, z0, {Accept1}, std::move(t1));
  Pda second(input, stack, First2 + 2 * q_count, F0, z0, {Accept2}, std::move(t2));
  return {std::move(first), std::move(second)};
}

std::set<Word> history_words(const TuringMachine& m, std::size_t max_configs) {
  const RunResult r = run(m, max_configs);
  if (r.outcome == RunOutcome::Stalled) return {};
  if (r.outcome == RunOutcome::Timeout) {
    if (forecast(m, max_configs).prognosis == Prognosis::NeverHalts) return {};
    throw Error(ErrorCode::Timeout, "machine undecided after " + std::to_string(max_configs) + " configurations");
  }
  const std::size_t t = r.configs();
  if (t > 24) throw Error(ErrorCode::ResourceCap, "2^" + std::to_string(t) + " history words is too many");
  std::set<Word> words;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    std::vector<bool> bits(t);
    for (std::size_t i = 0; i < t; ++i) bits[i] = (mask >> i) & 1;
    words.insert(history_word(m, r.history, bits));
  }
  return words;
}

namespace {

/// (state, stack bottom-to-top) configurations of one PDA after a prefix.
using PdaConfig = std::vector<std::uint32_t>;
using ConfigSet = std::set<PdaConfig>;

class Simulator {
 public:
  Simulator(const Pda& p, std::size_t max_stack, std::size_t& work, std::size_t max_work)
      : p_(p), max_stack_(max_stack), work_(work), max_work_(max_work) {}

  ConfigSet start() const { return closure({{p_.initial(), p_.initial_stack()}}); }

  ConfigSet read(const ConfigSet& from, SymbolId a) const {
    ConfigSet out;
    for (const auto& c : from) apply(c, a, out);
    return closure(std::move(out));
  }

  bool accepting(const ConfigSet& s) const {
    return std::any_of(s.begin(), s.end(), [&](const PdaConfig& c) { return p_.is_final(c[0]); });
  }

 private:
  void apply(const PdaConfig& c, std::optional<SymbolId> a, ConfigSet& out) const {
    if (c.size() == 1) return;
    for (auto idx : p_.moves(c[0], c.back())) {
      const auto& t = p_.transitions()[idx];
      if (t.input != a) continue;
      if (++work_ > max_work_) throw Error(ErrorCode::CapExceeded, "joint simulation budget exhausted");
      if (c.size() - 2 + t.push.size() > max_stack_) {
        throw Error(ErrorCode::CapExceeded, "stack cap exceeded in joint simulation");
      }
      PdaConfig next(c.begin(), c.end() - 1);
      next[0] = t.to;
      next.insert(next.end(), t.push.rbegin(), t.push.rend());
      out.insert(std::move(next));
    }
  }

  ConfigSet closure(ConfigSet s) const {
    if (!p_.has_epsilon_moves()) return s;
    std::vector<PdaConfig> todo(s.begin(), s.end());
    while (!todo.empty()) {
      PdaConfig c = std::move(todo.back());
      todo.pop_back();
      ConfigSet produced;
      apply(c, std::nullopt, produced);
      for (auto& n : produced) {
        if (s.insert(n).second) todo.push_back(n);
      }
    }
    return s;
  }

  const Pda& p_;
  std::size_t max_stack_;
  std::size_t& work_;
  std::size_t max_work_;
};

}  // namespace

std::set<Word> joint_intersection(const Pda& first, const Pda& second, std::size_t max_len, JointBudget budget) {
  if (!(first.input_alphabet() == second.input_alphabet())) {
    throw Error(ErrorCode::AlphabetMismatch, "PDAs read different alphabets");
  }
  std::size_t work = 0;
  auto cap = [&](const Pda& p) { return 1 + (max_len + 1) * std::max<std::size_t>(p.max_push(), 1); };
  const Simulator a(first, cap(first), work, budget.max_configurations);
  const Simulator b(second, cap(second), work, budget.max_configurations);
  const Alphabet& sigma = first.input_alphabet();

  std::set<Word> out;
  EncodedWord prefix;
  auto visit = [&](auto&& self, const ConfigSet& sa, const ConfigSet& sb) -> void {
    if (a.accepting(sa) && b.accepting(sb)) out.insert(sigma.decode(prefix));
    if (prefix.size() == max_len) return;
    for (SymbolId s = 0; s < sigma.size(); ++s) {
      ConfigSet na = a.read(sa, s);
      if (na.empty()) continue;
      ConfigSet nb = b.read(sb, s);
      if (nb.empty()) continue;
      prefix.push_back(s);
      self(self, na, nb);
      prefix.pop_back();
    }
  };
  visit(visit, a.start(), b.start());
  return out;
}

namespace {

/// Smallest T with 2^T > bound (strict) or 2^T >= bound.
std::size_t exponent_above(const BigNat& bound, bool strict) {
  std::size_t t = 0;
  BigNat power = 1;
  while (strict ? power <= bound : power < bound) {
    power <<= 1;
    ++t;
  }
  return t;
}

}  // namespace

HaltingVerdict decide_halting(const TuringMachine& m, const OracleChoice& oracle, DriverBudget budget) {
  return decide_halting(m, encode(m), oracle, budget);
}

HaltingVerdict decide_halting(const TuringMachine& m, const EncodedPair& pdas, const OracleChoice& oracle,
                              DriverBudget budget) {
  HaltingVerdict verdict;
  verdict.first_size = cfg_cardinality(pda_to_cfg(pdas.first), budget.grammar);
  std::size_t bound = 0;
  if (verdict.first_size.is_finite()) {
    verdict.proof_case = 1;
    bound = exponent_above(verdict.first_size.value(), true);
  } else {
    verdict.second_size = cfg_cardinality(pda_to_cfg(pdas.second), budget.grammar);
    if (verdict.second_size->is_finite()) {
      verdict.proof_case = 2;
      bound = exponent_above(verdict.second_size->value(), true);
    } else {
      verdict.proof_case = 3;
      BigNat oracle_m;
      if (std::holds_alternative<std::monostate>(oracle)) {
        throw Error(ErrorCode::OracleRequired, "both encoded languages are infinite and no oracle was given");
      } else if (const auto* given = std::get_if<BigNat>(&oracle)) {
        if (*given < 1) throw Error(ErrorCode::InvalidArgument, "oracle m must be at least 1");
        oracle_m = *given;
      } else {
        const Forecast f = forecast(m, budget.max_configs);
        if (f.prognosis == Prognosis::Unknown) {
          throw Error(ErrorCode::ResourceCap, "automatic oracle could not settle the machine within budget");
        }
        // |L_1 ∩ L_2| is 2^t for a halting run and 0 otherwise; both
        // languages are infinite, so this is the least valid m.
        oracle_m = f.prognosis == Prognosis::Halts ? pow2(f.configs) + 1 : BigNat(1);
      }
      verdict.oracle_m = oracle_m;
      bound = exponent_above(oracle_m, false);
    }
  }
  verdict.bound = std::max<std::size_t>(bound, 1);
  if (verdict.bound > budget.max_configs) {
    throw Error(ErrorCode::ResourceCap, "bound of " + std::to_string(verdict.bound) + " configurations exceeds budget");
  }
  const RunResult r = run(m, verdict.bound);
  verdict.halts = r.outcome == RunOutcome::Halted;
  verdict.configs = verdict.halts ? r.configs() : 0;
  return verdict;
}

}  // namespace langgen::tm
