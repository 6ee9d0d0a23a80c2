#include "langgen/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "langgen/error.hpp"

namespace langgen::text {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;

  const std::string& keyword() const { return tokens.front(); }
};

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + message);
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    std::string tok;
    while (in >> tok) {
      if (tok == "#" || (line.tokens.empty() && tok.front() == '#')) break;
      line.tokens.push_back(tok);
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

std::uint64_t parse_number(const Line& line, const std::string& tok) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail(line.number, "expected a number, got '" + tok + "'");
  return v;
}

std::uint32_t parse_id(const Line& line, const std::string& tok) {
  const auto v = parse_number(line, tok);
  if (v > 0xffffffffULL) fail(line.number, "id out of range: " + tok);
  return static_cast<std::uint32_t>(v);
}

/// Walks the lines of one `<kind> <name> ... end` block.
class Block {
 public:
  Block(const std::vector<Line>& lines, std::size_t& cursor, std::string_view kind) : lines_(lines), cursor_(cursor) {
    if (cursor_ >= lines_.size()) throw Error(ErrorCode::Parse, "expected '" + std::string(kind) + "' block");
    const Line& head = lines_[cursor_];
    if (head.keyword() != kind) fail(head.number, "expected '" + std::string(kind) + "', got '" + head.keyword() + "'");
    if (head.tokens.size() > 2) fail(head.number, "trailing tokens after block name");
    name_ = head.tokens.size() == 2 ? head.tokens[1] : std::string();
    start_line_ = head.number;
    ++cursor_;
  }

  const std::string& name() const { return name_; }

  /// Next body line, or nullptr at `end`.
  const Line* next() {
    if (cursor_ >= lines_.size()) fail(start_line_, "block is missing 'end'");
    const Line& l = lines_[cursor_++];
    if (l.keyword() == "end") {
      if (l.tokens.size() != 1) fail(l.number, "trailing tokens after 'end'");
      return nullptr;
    }
    return &l;
  }

  std::size_t start_line() const { return start_line_; }

 private:
  const std::vector<Line>& lines_;
  std::size_t& cursor_;
  std::string name_;
  std::size_t start_line_ = 0;
};

void expect_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n) {
    fail(l.number, "'" + l.keyword() + "' expects " + std::to_string(n - 1) + " argument(s)");
  }
}

/// Rewrites construction errors as parse errors pointing at the block.
template <class F>
auto rethrow_at(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::Domain) fail(line, e.what());
    throw;
  }
}

NamedAutomaton parse_automaton_block(const std::vector<Line>& lines, std::size_t& cursor) {
  Block block(lines, cursor, "automaton");
  std::optional<Alphabet> alphabet;
  std::optional<std::size_t> states;
  std::optional<StateId> initial;
  std::vector<StateId> finals;
  std::vector<std::tuple<std::size_t, StateId, std::string, StateId>> raw;
  while (const Line* l = block.next()) {
    const auto& k = l->keyword();
    if (k == "alphabet") {
      if (alphabet) fail(l->number, "duplicate 'alphabet'");
      std::vector<Symbol> syms(l->tokens.begin() + 1, l->tokens.end());
      alphabet = rethrow_at(l->number, [&] { return Alphabet(std::move(syms)); });
    } else if (k == "states") {
      expect_arity(*l, 2);
      states = parse_number(*l, l->tokens[1]);
    } else if (k == "initial") {
      expect_arity(*l, 2);
      initial = parse_id(*l, l->tokens[1]);
    } else if (k == "final") {
      for (std::size_t i = 1; i < l->tokens.size(); ++i) finals.push_back(parse_id(*l, l->tokens[i]));
    } else if (k == "trans") {
      expect_arity(*l, 4);
      raw.emplace_back(l->number, parse_id(*l, l->tokens[1]), l->tokens[2], parse_id(*l, l->tokens[3]));
    } else {
      fail(l->number, "unknown keyword '" + k + "'");
    }
  }
  if (!alphabet) fail(block.start_line(), "missing 'alphabet'");
  if (!states) fail(block.start_line(), "missing 'states'");
  std::vector<Transition> transitions;
  for (const auto& [line, from, sym, to] : raw) {
    const auto id = alphabet->find(sym);
    if (!id) fail(line, "symbol '" + sym + "' not in alphabet");
    transitions.push_back({from, *id, to});
  }
  if (*states == 0) {
    if (initial || !finals.empty() || !transitions.empty()) {
      fail(block.start_line(), "an automaton with 0 states has no initial, final or transitions");
    }
    return {block.name(), Automaton::empty_language(*alphabet)};
  }
  if (!initial) fail(block.start_line(), "missing 'initial'");
  auto a = rethrow_at(block.start_line(), [&] {
    return Automaton(*alphabet, *states, *initial, std::move(finals), std::move(transitions));
  });
  return {block.name(), std::move(a)};
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    out += ' ';
    out += p;
  }
  return out;
}

}  // namespace

std::vector<NamedAutomaton> parse_automata(std::string_view text) {
  const auto lines = tokenize(text);
  std::vector<NamedAutomaton> out;
  std::size_t cursor = 0;
  while (cursor < lines.size()) out.push_back(parse_automaton_block(lines, cursor));
  if (out.empty()) throw Error(ErrorCode::Parse, "no automaton block found");
  return out;
}

NamedAutomaton parse_automaton(std::string_view text) {
  auto all = parse_automata(text);
  if (all.size() != 1) throw Error(ErrorCode::Parse, "expected exactly one automaton block");
  return std::move(all.front());
}

std::string format_automaton(const Automaton& a, std::string_view name) {
  std::ostringstream out;
  out << "automaton " << name << '\n';
  out << "alphabet" << join(a.alphabet().symbols()) << '\n';
  out << "states " << a.state_count() << '\n';
  if (a.has_states()) {
    out << "initial " << a.initial() << '\n';
    out << "final";
    for (auto f : a.finals()) out << ' ' << f;
    out << '\n';
    for (const auto& t : a.transitions()) {
      out << "trans " << t.from << ' ' << a.alphabet()[t.symbol] << ' ' << t.to << '\n';
    }
  }
  out << "end\n";
  return out.str();
}

FamilySpec parse_family(std::string_view text) {
  std::vector<FamilyMember> members;
  for (auto& [name, a] : parse_automata(text)) members.push_back({name, std::move(a)});
  try {
    return FamilySpec(std::move(members));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::AlphabetMismatch) throw Error(ErrorCode::Parse, e.what());
    throw;
  }
}

std::string format_family(const FamilySpec& f) {
  std::string out;
  for (const auto& m : f.members()) out += format_automaton(m.automaton, m.name);
  return out;
}

Cfg parse_grammar(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t cursor = 0;
  Block block(lines, cursor, "grammar");
  std::optional<std::vector<std::string>> alphabet;
  std::vector<std::string> nonterminals;
  std::optional<std::string> start;
  std::vector<Cfg::Rule> rules;
  auto declare = [&](const std::string& nt) {
    if (std::find(nonterminals.begin(), nonterminals.end(), nt) == nonterminals.end()) nonterminals.push_back(nt);
  };
  while (const Line* l = block.next()) {
    const auto& k = l->keyword();
    if (k == "alphabet") {
      if (alphabet) fail(l->number, "duplicate 'alphabet'");
      alphabet.emplace(l->tokens.begin() + 1, l->tokens.end());
    } else if (k == "nonterminals") {
      for (std::size_t i = 1; i < l->tokens.size(); ++i) declare(l->tokens[i]);
    } else if (k == "start") {
      expect_arity(*l, 2);
      start = l->tokens[1];
    } else if (k == "rule") {
      if (l->tokens.size() < 4 || l->tokens[2] != "->") fail(l->number, "expected 'rule <NT> -> <tok>...'");
      std::vector<std::string> body(l->tokens.begin() + 3, l->tokens.end());
      if (body.size() == 1 && body.front() == "eps") body.clear();
      if (std::find(body.begin(), body.end(), "eps") != body.end()) fail(l->number, "'eps' must stand alone");
      declare(l->tokens[1]);
      rules.emplace_back(l->tokens[1], std::move(body));
    } else {
      fail(l->number, "unknown keyword '" + k + "'");
    }
  }
  if (cursor != lines.size()) fail(lines[cursor].number, "content after 'end'");
  if (!start) fail(block.start_line(), "missing 'start'");
  declare(*start);
  std::vector<std::string> terminals;
  if (alphabet) {
    terminals = *alphabet;
  } else {
    for (const auto& [lhs, body] : rules) {
      for (const auto& tok : body) {
        if (std::find(nonterminals.begin(), nonterminals.end(), tok) != nonterminals.end()) continue;
        if (std::find(terminals.begin(), terminals.end(), tok) == terminals.end()) terminals.push_back(tok);
      }
    }
  }
  return rethrow_at(block.start_line(), [&] { return Cfg::from_rules(nonterminals, terminals, *start, rules); });
}

std::string format_grammar(const Cfg& g, std::string_view name) {
  std::ostringstream out;
  out << "grammar " << name << '\n';
  out << "alphabet" << join(g.terminals().symbols()) << '\n';
  out << "nonterminals" << join(g.nonterminals()) << '\n';
  out << "start " << g.nonterminals()[g.start()] << '\n';
  for (const auto& p : g.productions()) {
    out << "rule " << g.nonterminals()[p.lhs] << " ->";
    if (p.body.empty()) out << " eps";
    for (const auto& s : p.body) out << ' ' << g.symbol_name(s);
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

Pda parse_pda(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t cursor = 0;
  Block block(lines, cursor, "pda");
  std::optional<Alphabet> input, stack;
  std::optional<std::size_t> states;
  std::optional<StateId> initial;
  std::optional<std::string> stackinit;
  std::vector<StateId> finals;
  std::vector<const Line*> trans;
  while (const Line* l = block.next()) {
    const auto& k = l->keyword();
    if (k == "alphabet" || k == "stack") {
      auto& target = k == "alphabet" ? input : stack;
      if (target) fail(l->number, "duplicate '" + k + "'");
      std::vector<Symbol> syms(l->tokens.begin() + 1, l->tokens.end());
      if (std::find(syms.begin(), syms.end(), "eps") != syms.end()) fail(l->number, "'eps' is reserved");
      target = rethrow_at(l->number, [&] { return Alphabet(std::move(syms)); });
    } else if (k == "states") {
      expect_arity(*l, 2);
      states = parse_number(*l, l->tokens[1]);
    } else if (k == "initial") {
      expect_arity(*l, 2);
      initial = parse_id(*l, l->tokens[1]);
    } else if (k == "stackinit") {
      expect_arity(*l, 2);
      stackinit = l->tokens[1];
    } else if (k == "final") {
      for (std::size_t i = 1; i < l->tokens.size(); ++i) finals.push_back(parse_id(*l, l->tokens[i]));
    } else if (k == "trans") {
      if (l->tokens.size() < 6) fail(l->number, "expected 'trans <q> <a|eps> <X> <q'> <push...|eps>'");
      trans.push_back(l);
    } else {
      fail(l->number, "unknown keyword '" + k + "'");
    }
  }
  if (cursor != lines.size()) fail(lines[cursor].number, "content after 'end'");
  if (!input || !stack || !states || !initial || !stackinit) {
    fail(block.start_line(), "pda needs alphabet, stack, states, initial and stackinit");
  }
  auto stack_id = [&](const Line& l, const std::string& tok) {
    const auto id = stack->find(tok);
    if (!id) fail(l.number, "stack symbol '" + tok + "' not declared");
    return *id;
  };
  std::vector<PdaTransition> transitions;
  for (const Line* l : trans) {
    PdaTransition t;
    t.from = parse_id(*l, l->tokens[1]);
    if (l->tokens[2] != "eps") {
      const auto a = input->find(l->tokens[2]);
      if (!a) fail(l->number, "input symbol '" + l->tokens[2] + "' not declared");
      t.input = *a;
    }
    t.top = stack_id(*l, l->tokens[3]);
    t.to = parse_id(*l, l->tokens[4]);
    if (!(l->tokens.size() == 6 && l->tokens[5] == "eps")) {
      for (std::size_t i = 5; i < l->tokens.size(); ++i) t.push.push_back(stack_id(*l, l->tokens[i]));
    }
    transitions.push_back(std::move(t));
  }
  const auto z = stack_id(lines[cursor - 1], *stackinit);
  return rethrow_at(block.start_line(), [&] {
    return Pda(*input, *stack, *states, *initial, z, std::move(finals), std::move(transitions));
  });
}

std::string format_pda(const Pda& p, std::string_view name) {
  std::ostringstream out;
  out << "pda " << name << '\n';
  out << "alphabet" << join(p.input_alphabet().symbols()) << '\n';
  out << "stack" << join(p.stack_alphabet().symbols()) << '\n';
  out << "states " << p.state_count() << '\n';
  out << "initial " << p.initial() << '\n';
  out << "stackinit " << p.stack_alphabet()[p.initial_stack()] << '\n';
  out << "final";
  for (auto f : p.finals()) out << ' ' << f;
  out << '\n';
  for (const auto& t : p.transitions()) {
    out << "trans " << t.from << ' ' << (t.input ? p.input_alphabet()[*t.input] : std::string("eps")) << ' '
        << p.stack_alphabet()[t.top] << ' ' << t.to;
    if (t.push.empty()) out << " eps";
    for (auto x : t.push) out << ' ' << p.stack_alphabet()[x];
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

tm::TuringMachine parse_tm(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t cursor = 0;
  Block block(lines, cursor, "tm");
  std::optional<Alphabet> tape;
  std::optional<std::string> blank;
  std::optional<std::size_t> states;
  std::optional<StateId> initial;
  std::vector<StateId> halting;
  std::vector<const Line*> trans;
  while (const Line* l = block.next()) {
    const auto& k = l->keyword();
    if (k == "tape") {
      if (tape) fail(l->number, "duplicate 'tape'");
      std::vector<Symbol> syms(l->tokens.begin() + 1, l->tokens.end());
      tape = rethrow_at(l->number, [&] { return Alphabet(std::move(syms)); });
    } else if (k == "blank") {
      expect_arity(*l, 2);
      blank = l->tokens[1];
    } else if (k == "states") {
      expect_arity(*l, 2);
      states = parse_number(*l, l->tokens[1]);
    } else if (k == "initial") {
      expect_arity(*l, 2);
      initial = parse_id(*l, l->tokens[1]);
    } else if (k == "halt") {
      for (std::size_t i = 1; i < l->tokens.size(); ++i) halting.push_back(parse_id(*l, l->tokens[i]));
    } else if (k == "trans") {
      expect_arity(*l, 6);
      trans.push_back(l);
    } else {
      fail(l->number, "unknown keyword '" + k + "'");
    }
  }
  if (cursor != lines.size()) fail(lines[cursor].number, "content after 'end'");
  if (!tape || !blank || !states || !initial) fail(block.start_line(), "tm needs tape, blank, states and initial");
  auto sym = [&](const Line& l, const std::string& tok) {
    const auto id = tape->find(tok);
    if (!id) fail(l.number, "tape symbol '" + tok + "' not declared");
    return *id;
  };
  const auto blank_id = sym(lines[cursor - 1], *blank);
  tm::TuringMachine::RuleMap rules;
  for (const Line* l : trans) {
    const auto& mv = l->tokens[5];
    if (mv != "L" && mv != "R") fail(l->number, "move must be L or R");
    const tm::Rule r{parse_id(*l, l->tokens[3]), sym(*l, l->tokens[4]), mv == "L" ? tm::Move::Left : tm::Move::Right};
    if (!rules.emplace(std::pair{parse_id(*l, l->tokens[1]), sym(*l, l->tokens[2])}, r).second) {
      fail(l->number, "duplicate rule for this state and symbol");
    }
  }
  return rethrow_at(block.start_line(), [&] {
    return tm::TuringMachine(*tape, blank_id, *states, *initial, std::move(halting), std::move(rules));
  });
}

std::string format_tm(const tm::TuringMachine& m, std::string_view name) {
  std::ostringstream out;
  const auto& tape = m.tape_alphabet();
  out << "tm " << name << '\n';
  out << "tape" << join(tape.symbols()) << '\n';
  out << "blank " << tape[m.blank()] << '\n';
  out << "states " << m.state_count() << '\n';
  out << "initial " << m.initial() << '\n';
  out << "halt";
  for (auto h : m.halting_states()) out << ' ' << h;
  out << '\n';
  for (const auto& [key, r] : m.rules()) {
    out << "trans " << key.first << ' ' << tape[key.second] << ' ' << r.next << ' ' << tape[r.write] << ' '
        << (r.move == tm::Move::Left ? 'L' : 'R') << '\n';
  }
  out << "end\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "failed reading '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

}  // namespace langgen::text
