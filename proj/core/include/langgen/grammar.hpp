#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "langgen/automaton.hpp"
#include "langgen/count.hpp"

namespace langgen {

struct GrammarSymbol {
  bool terminal = false;
  std::uint32_t id = 0;

  friend auto operator<=>(const GrammarSymbol&, const GrammarSymbol&) = default;
};

struct Production {
  std::uint32_t lhs = 0;
  std::vector<GrammarSymbol> body;  // empty body is an epsilon rule

  friend auto operator<=>(const Production&, const Production&) = default;
};

/// Context-free grammar with named nonterminals and a terminal alphabet.
/// Productions are kept sorted and free of duplicates.
class Cfg {
 public:
  /// Throws InvalidGrammar on undeclared ids, name clashes or a bad start.
  Cfg(std::vector<std::string> nonterminals, Alphabet terminals, std::uint32_t start,
      std::vector<Production> productions);

  using Rule = std::pair<std::string, std::vector<std::string>>;

  /// Builds from textual rules. Body tokens naming a declared nonterminal are
  /// nonterminals, everything else must be a terminal.
  static Cfg from_rules(std::vector<std::string> nonterminals, std::vector<std::string> terminals,
                        const std::string& start, const std::vector<Rule>& rules);

  /// A grammar with only the start symbol and no productions.
  static Cfg empty(Alphabet terminals, std::string start_name);

  const std::vector<std::string>& nonterminals() const noexcept { return nonterminals_; }
  const Alphabet& terminals() const noexcept { return terminals_; }
  std::uint32_t start() const noexcept { return start_; }
  const std::vector<Production>& productions() const noexcept { return productions_; }
  std::optional<std::uint32_t> find_nonterminal(const std::string& name) const;

  std::string symbol_name(const GrammarSymbol& s) const;

  friend bool operator==(const Cfg&, const Cfg&) = default;

 private:
  std::vector<std::string> nonterminals_;
  Alphabet terminals_;
  std::uint32_t start_ = 0;
  std::vector<Production> productions_;
};

/// Removes non-generating, then unreachable, nonterminals. If the start
/// symbol does not generate, returns Cfg::empty with the same terminals.
Cfg cfg_reduce(const Cfg& g);

struct CfgBudget {
  /// Maximum number of distinct words materialized for finite languages.
  std::size_t max_words = 2'000'000;
};

/// Exact |L(g)| or infinite. Infinite iff some useful nonterminal A derives
/// a sentential form uAv with uv able to produce a nonempty word; otherwise
/// the word set is materialized with deduplication (ResourceCap beyond the
/// budget).
Count cfg_cardinality(const Cfg& g, CfgBudget budget = {});

/// Chart recognizer over a binarized form of a grammar, prepared once and
/// queried many times.
class CfgRecognizer {
 public:
  explicit CfgRecognizer(const Cfg& g);

  /// Throws UnknownSymbol.
  bool accepts(const Word& w) const;
  bool accepts(std::span<const SymbolId> w) const;

 private:
  struct Binary {
    std::uint32_t lhs, left, right;
  };

  Alphabet terminals_;
  bool empty_language_ = false;
  std::uint32_t start_ = 0;
  std::size_t symbol_count_ = 0;  // terminals first, then nonterminals
  std::vector<std::uint8_t> nullable_;
  std::vector<std::vector<std::uint32_t>> closure_;  // symbol -> symbols deriving it by unit steps
  std::vector<Binary> binary_;
};

bool cfg_member(const Cfg& g, const Word& w);

}  // namespace langgen
