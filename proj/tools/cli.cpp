#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "langgen/automaton_ops.hpp"
#include "langgen/error.hpp"
#include "langgen/generatability.hpp"
#include "langgen/grammar.hpp"
#include "langgen/pda.hpp"
#include "langgen/text_format.hpp"
#include "langgen/tm.hpp"
#include "langgen/witness.hpp"

namespace langgen::cli {

namespace {

bool single_char_symbols(const Alphabet& a) {
  return std::all_of(a.symbols().begin(), a.symbols().end(), [](const Symbol& s) { return s.size() == 1; });
}

std::string count_text(const std::optional<Count>& c) { return c ? c->to_string() : std::string("none"); }

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Domain: return 1;
    case ErrorCategory::Input: return 2;
    case ErrorCategory::Resource: return 3;
  }
  return 1;
}

Automaton load_automaton(const std::string& path) {
  return text::parse_automaton(text::read_file(path)).automaton;
}

const char* outcome_name(tm::RunOutcome o) {
  switch (o) {
    case tm::RunOutcome::Halted: return "halted";
    case tm::RunOutcome::Stalled: return "stalled";
    case tm::RunOutcome::Timeout: return "timeout";
  }
  return "";
}

}  // namespace

Word parse_word(const std::string& text, const Alphabet& alphabet) {
  Word w;
  if (text == "@") return w;
  if (text.empty()) throw Error(ErrorCode::Parse, "empty word token (use '@' for the empty word)");
  if (text.find('.') != std::string::npos) {
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, '.')) w.push_back(part);
    if (text.back() == '.') w.emplace_back();
  } else if (single_char_symbols(alphabet)) {
    for (char c : text) w.emplace_back(1, c);
  } else {
    w.push_back(text);
  }
  for (const auto& s : w) {
    if (!alphabet.find(s)) throw Error(ErrorCode::UnknownSymbol, "symbol '" + s + "' not in alphabet");
  }
  return w;
}

std::vector<Word> parse_word_list(const std::string& text, const Alphabet& alphabet) {
  std::vector<Word> out;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ',')) out.push_back(parse_word(part, alphabet));
  if (!text.empty() && text.back() == ',') throw Error(ErrorCode::Parse, "trailing ',' in word list");
  return out;
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "@";
  const char* sep = single_char_symbols(alphabet) ? "" : ".";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += w[i];
  }
  return out;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-automaton families, uniform generation bounds, and pushdown encodings of machine runs",
               "langgen"};
  app.require_subcommand(1);
  int status = 0;

  // Automata and families.
  std::string family_path;
  auto* analyze = app.add_subcommand("analyze", "Intersection table and minimal m of a family");
  analyze->add_option("family", family_path, "Family file")->required();
  analyze->callback([&] {
    const auto family = text::parse_family(text::read_file(family_path));
    const auto report = langgen::analyze(family);
    out << "mask states finite cardinality longest\n";
    for (const auto& s : report.subsets) {
      out << s.mask << ' ' << s.intersection_states << ' ' << (s.finite ? "yes" : "no") << ' '
          << s.cardinality << ' ' << count_text(s.longest) << '\n';
    }
    out << "minimal_m " << report.minimal_m << '\n';
  });

  std::string examples;
  std::size_t max_len = 8;
  std::size_t max_count = 32;
  auto* generate = app.add_subcommand("generate", "Canonical generator output for a set of examples");
  generate->add_option("family", family_path, "Family file")->required();
  generate->add_option("--examples", examples, "Comma-separated example words")->required();
  generate->add_option("--max-len", max_len, "Longest enumerated word")->capture_default_str();
  generate->add_option("--count", max_count, "Number of enumerated words")->capture_default_str();
  generate->callback([&] {
    const auto family = text::parse_family(text::read_file(family_path));
    const auto words = parse_word_list(examples, family.alphabet());
    const auto result = canonical_generate(family, words);
    out << text::format_automaton(*result.output, "generated");
    out << "status " << (result.status == GenerationStatus::Infinite ? "infinite" : "finite") << '\n';
    for (const auto& w : enumerate(*result.output, max_len, max_count)) {
      out << format_word(w, family.alphabet()) << '\n';
    }
  });

  std::vector<std::string> paths;
  auto* intersect = app.add_subcommand("intersect", "Product of all automata in the given files");
  intersect->add_option("files", paths, "Automaton or family files")->required();
  intersect->callback([&] {
    std::vector<Automaton> automata;
    for (const auto& p : paths) {
      for (auto& named : text::parse_automata(text::read_file(p))) automata.push_back(std::move(named.automaton));
    }
    out << text::format_automaton(product_intersection(automata), "intersection");
  });

  std::string path;
  auto* count = app.add_subcommand("count", "Number of accepted words or inf");
  count->add_option("file", path, "Automaton file")->required();
  count->callback([&] { out << cardinality(load_automaton(path)) << '\n'; });

  auto* longest = app.add_subcommand("longest", "Length of the longest accepted word, inf, or none");
  longest->add_option("file", path, "Automaton file")->required();
  longest->callback([&] { out << count_text(longest_word_length(load_automaton(path))) << '\n'; });

  std::optional<std::size_t> enum_count;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Accepted words in shortlex order");
  enumerate_cmd->add_option("file", path, "Automaton file")->required();
  enumerate_cmd->add_option("--max-len", max_len, "Longest enumerated word")->required();
  enumerate_cmd->add_option("--count", enum_count, "Stop after this many words");
  enumerate_cmd->callback([&] {
    const auto a = load_automaton(path);
    for (const auto& w : enumerate(a, max_len, enum_count)) out << format_word(w, a.alphabet()) << '\n';
  });

  std::string word;
  auto* member_cmd = app.add_subcommand("member", "Membership of one word");
  member_cmd->add_option("file", path, "Automaton file")->required();
  member_cmd->add_option("word", word, "Word ('@' is empty)")->required();
  member_cmd->callback([&] {
    const auto a = load_automaton(path);
    out << (member(a, parse_word(word, a.alphabet())) ? "true" : "false") << '\n';
  });

  // Witness families.
  witness::WitnessParams params;
  std::string out_path;
  auto* witness_cmd = app.add_subcommand("witness", "Lower-bound families");
  witness_cmd->require_subcommand(1);
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--n", params.n, "Block length")->required();
    sub->add_option("--k", params.k, "Number of members")->required();
    sub->add_flag("--padded", params.padded, "Padded variant");
  };
  auto* wbuild = witness_cmd->add_subcommand("build", "Write the family file");
  add_params(wbuild);
  wbuild->add_option("--out", out_path, "Output path")->required();
  wbuild->callback([&] { text::write_file(out_path, text::format_family(witness::build(params))); });
  auto* wverify = witness_cmd->add_subcommand("verify", "Check the extremal properties");
  add_params(wverify);
  wverify->callback([&] {
    const auto report = witness::verify_witness(params);
    out << (report.ok() ? "OK" : "FAIL") << '\n';
    for (const auto& c : report.checks) {
      out << c.name << ' ' << witness::to_string(c.status);
      if (!c.detail.empty()) out << ' ' << c.detail;
      out << '\n';
    }
    out << "minimal_m " << report.analysis.minimal_m << '\n';
    if (!report.ok()) status = 1;
  });

  // Grammars and pushdown automata.
  auto* cfg_cmd = app.add_subcommand("cfg", "Context-free grammars");
  cfg_cmd->require_subcommand(1);
  auto* cfg_count = cfg_cmd->add_subcommand("count", "Number of generated words or inf");
  cfg_count->add_option("file", path, "Grammar file")->required();
  cfg_count->callback([&] { out << cfg_cardinality(text::parse_grammar(text::read_file(path))) << '\n'; });

  auto* pda_cmd = app.add_subcommand("pda", "Pushdown automata");
  pda_cmd->require_subcommand(1);
  auto* to_cfg = pda_cmd->add_subcommand("to-cfg", "Equivalent reduced grammar");
  to_cfg->add_option("file", path, "PDA file")->required();
  to_cfg->callback([&] {
    out << text::format_grammar(pda_to_cfg(text::parse_pda(text::read_file(path))), "from_pda");
  });
  auto* pda_mem = pda_cmd->add_subcommand("member", "Membership of one word");
  pda_mem->add_option("file", path, "PDA file")->required();
  pda_mem->add_option("word", word, "Word ('@' is empty)")->required();
  pda_mem->callback([&] {
    const auto p = text::parse_pda(text::read_file(path));
    out << (pda_member(p, parse_word(word, p.input_alphabet())) ? "true" : "false") << '\n';
  });

  // Machines.
  std::size_t max_configs = 0;
  std::string out1, out2;
  auto* tm_cmd = app.add_subcommand("tm", "Turing machines");
  tm_cmd->require_subcommand(1);
  auto* tm_run = tm_cmd->add_subcommand("run", "Print the configuration sequence");
  tm_run->add_option("file", path, "Machine file")->required();
  tm_run->add_option("--max-configs", max_configs, "Configuration budget")->required();
  tm_run->callback([&] {
    const auto m = text::parse_tm(text::read_file(path));
    const auto r = tm::run(m, max_configs);
    const auto alphabet = tm::history_alphabet(m);
    for (const auto& c : r.history) out << format_word(tm::configuration_word(m, c), alphabet) << '\n';
    out << outcome_name(r.outcome) << ' ' << r.configs() << '\n';
  });
  auto* tm_encode = tm_cmd->add_subcommand("encode", "Write the two history-checking PDAs");
  tm_encode->add_option("file", path, "Machine file")->required();
  tm_encode->add_option("--out1", out1, "First PDA path")->required();
  tm_encode->add_option("--out2", out2, "Second PDA path")->required();
  tm_encode->callback([&] {
    const auto pair = tm::encode(text::parse_tm(text::read_file(path)));
    text::write_file(out1, text::format_pda(pair.first, "history_odd"));
    text::write_file(out2, text::format_pda(pair.second, "history_even"));
  });
  auto* tm_intersect = tm_cmd->add_subcommand("intersect", "Words accepted by both encoded PDAs");
  tm_intersect->add_option("file", path, "Machine file")->required();
  tm_intersect->add_option("--max-len", max_len, "Longest word considered")->required();
  tm_intersect->callback([&] {
    const auto m = text::parse_tm(text::read_file(path));
    const auto pair = tm::encode(m);
    const auto words = tm::joint_intersection(pair.first, pair.second, max_len);
    for (const auto& w : words) out << format_word(w, pair.first.input_alphabet()) << '\n';
    out << "count " << words.size() << '\n';
  });

  std::string oracle_text;
  bool oracle_auto = false;
  tm::DriverBudget budget;
  auto* reduction = app.add_subcommand("reduction", "Halting reduction");
  reduction->require_subcommand(1);
  auto* decide = reduction->add_subcommand("decide-halting", "Decide halting from a generatability bound");
  decide->add_option("file", path, "Machine file")->required();
  auto* oracle_opt = decide->add_option("--oracle", oracle_text, "A value m for which the pair is m-generatable");
  auto* auto_opt = decide->add_flag("--oracle-auto", oracle_auto, "Compute m by running the machine");
  oracle_opt->excludes(auto_opt);
  decide->add_option("--budget", budget.max_configs, "Configuration budget")->capture_default_str();
  decide->callback([&] {
    tm::OracleChoice oracle;
    if (oracle_auto) {
      oracle = tm::AutoOracle{};
    } else if (!oracle_text.empty()) {
      if (!std::all_of(oracle_text.begin(), oracle_text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw Error(ErrorCode::Parse, "--oracle expects a decimal number");
      }
      oracle = BigNat(oracle_text);
    }
    const auto v = tm::decide_halting(text::parse_tm(text::read_file(path)), oracle, budget);
    if (v.halts) {
      out << "halts " << v.configs << '\n';
    } else {
      out << "does-not-halt\n";
    }
    out << "case " << v.proof_case << '\n';
    out << "bound " << v.bound << '\n';
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 3;
  }
  return status;
}

}  // namespace langgen::cli
