#include "langgen/grammar.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "langgen/error.hpp"

namespace langgen {

Cfg::Cfg(std::vector<std::string> nonterminals, Alphabet terminals, std::uint32_t start,
         std::vector<Production> productions)
    : nonterminals_(std::move(nonterminals)),
      terminals_(std::move(terminals)),
      start_(start),
      productions_(std::move(productions)) {
  if (start_ >= nonterminals_.size()) throw Error(ErrorCode::InvalidGrammar, "start symbol not declared");
  std::set<std::string> names;
  for (const auto& n : nonterminals_) {
    if (n.empty()) throw Error(ErrorCode::InvalidGrammar, "empty nonterminal name");
    if (!names.insert(n).second) throw Error(ErrorCode::InvalidGrammar, "duplicate nonterminal '" + n + "'");
    if (terminals_.find(n)) throw Error(ErrorCode::InvalidGrammar, "'" + n + "' is both terminal and nonterminal");
  }
  for (const auto& p : productions_) {
    if (p.lhs >= nonterminals_.size()) throw Error(ErrorCode::InvalidGrammar, "production lhs not declared");
    for (const auto& s : p.body) {
      const std::size_t limit = s.terminal ? terminals_.size() : nonterminals_.size();
      if (s.id >= limit) throw Error(ErrorCode::InvalidGrammar, "production body symbol not declared");
    }
  }
  std::sort(productions_.begin(), productions_.end());
  productions_.erase(std::unique(productions_.begin(), productions_.end()), productions_.end());
}

Cfg Cfg::from_rules(std::vector<std::string> nonterminals, std::vector<std::string> terminals,
                    const std::string& start, const std::vector<Rule>& rules) {
  std::unordered_map<std::string, std::uint32_t> nt_index;
  for (std::uint32_t i = 0; i < nonterminals.size(); ++i) nt_index.emplace(nonterminals[i], i);
  Alphabet sigma(std::move(terminals));
  auto nt = [&](const std::string& name) {
    auto it = nt_index.find(name);
    if (it == nt_index.end()) throw Error(ErrorCode::InvalidGrammar, "undeclared nonterminal '" + name + "'");
    return it->second;
  };
  std::vector<Production> productions;
  for (const auto& [lhs, body] : rules) {
    Production p{nt(lhs), {}};
    for (const auto& tok : body) {
      if (auto it = nt_index.find(tok); it != nt_index.end()) {
        p.body.push_back({false, it->second});
      } else if (auto t = sigma.find(tok)) {
        p.body.push_back({true, *t});
      } else {
        throw Error(ErrorCode::InvalidGrammar, "undeclared symbol '" + tok + "'");
      }
    }
    productions.push_back(std::move(p));
  }
  const std::uint32_t s = nt(start);
  return Cfg(std::move(nonterminals), std::move(sigma), s, std::move(productions));
}

Cfg Cfg::empty(Alphabet terminals, std::string start_name) {
  return Cfg({std::move(start_name)}, std::move(terminals), 0, {});
}

std::optional<std::uint32_t> Cfg::find_nonterminal(const std::string& name) const {
  auto it = std::find(nonterminals_.begin(), nonterminals_.end(), name);
  if (it == nonterminals_.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - nonterminals_.begin());
}

std::string Cfg::symbol_name(const GrammarSymbol& s) const {
  return s.terminal ? terminals_[s.id] : nonterminals_.at(s.id);
}

namespace {

/// Least fixpoint over nonterminals: marked[A] once some production of A
/// satisfies pred given the current marks.
template <typename Pred>
std::vector<std::uint8_t> fixpoint(const Cfg& g, Pred pred) {
  std::vector<std::uint8_t> marked(g.nonterminals().size(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions()) {
      if (!marked[p.lhs] && pred(p, marked)) {
        marked[p.lhs] = 1;
        changed = true;
      }
    }
  }
  return marked;
}

std::vector<std::uint8_t> generating_set(const Cfg& g) {
  return fixpoint(g, [](const Production& p, const std::vector<std::uint8_t>& gen) {
    return std::all_of(p.body.begin(), p.body.end(), [&](const GrammarSymbol& s) { return s.terminal || gen[s.id]; });
  });
}

/// Nonterminals deriving some nonempty word (valid for reduced grammars).
std::vector<std::uint8_t> nonempty_set(const Cfg& g) {
  return fixpoint(g, [](const Production& p, const std::vector<std::uint8_t>& pos) {
    return std::any_of(p.body.begin(), p.body.end(), [&](const GrammarSymbol& s) { return s.terminal || pos[s.id]; });
  });
}

}  // namespace

Cfg cfg_reduce(const Cfg& g) {
  const auto generating = generating_set(g);
  if (!generating[g.start()]) return Cfg::empty(g.terminals(), g.nonterminals()[g.start()]);

  auto usable = [&](const Production& p) {
    return generating[p.lhs] &&
           std::all_of(p.body.begin(), p.body.end(), [&](const GrammarSymbol& s) { return s.terminal || generating[s.id]; });
  };
  std::vector<std::uint8_t> reachable(g.nonterminals().size(), 0);
  reachable[g.start()] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions()) {
      if (!reachable[p.lhs] || !usable(p)) continue;
      for (const auto& s : p.body) {
        if (!s.terminal && !reachable[s.id]) {
          reachable[s.id] = 1;
          changed = true;
        }
      }
    }
  }

  std::vector<std::uint32_t> renumber(g.nonterminals().size(), UINT32_MAX);
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < g.nonterminals().size(); ++i) {
    if (reachable[i] && generating[i]) {
      renumber[i] = static_cast<std::uint32_t>(names.size());
      names.push_back(g.nonterminals()[i]);
    }
  }
  std::vector<Production> kept;
  for (const auto& p : g.productions()) {
    if (renumber[p.lhs] == UINT32_MAX || !usable(p)) continue;
    Production q{renumber[p.lhs], p.body};
    for (auto& s : q.body) {
      if (!s.terminal) s.id = renumber[s.id];
    }
    kept.push_back(std::move(q));
  }
  return Cfg(std::move(names), g.terminals(), renumber[g.start()], std::move(kept));
}

Count cfg_cardinality(const Cfg& g, CfgBudget budget) {
  const Cfg r = cfg_reduce(g);
  if (r.productions().empty()) return Count(0);
  const std::size_t n = r.nonterminals().size();
  const auto pos = nonempty_set(r);

  // Dependency edges A -> B per occurrence of B in a body of A, flagged when
  // the rest of that body can contribute a nonempty word.
  std::vector<std::vector<std::pair<std::uint32_t, bool>>> edges(n);
  for (const auto& p : r.productions()) {
    for (std::size_t j = 0; j < p.body.size(); ++j) {
      if (p.body[j].terminal) continue;
      bool grows = false;
      for (std::size_t i = 0; i < p.body.size() && !grows; ++i) {
        if (i != j) grows = p.body[i].terminal || pos[p.body[i].id];
      }
      edges[p.lhs].emplace_back(p.body[j].id, grows);
    }
  }

  // Tarjan's strongly connected components.
  std::vector<int> index(n, -1), low(n, 0), component(n, -1);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  int counter = 0, components = 0;
  std::function<void(std::uint32_t)> connect = [&](std::uint32_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (const auto& [w, grows] : edges[v]) {
      (void)grows;
      if (index[w] < 0) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::uint32_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        component[w] = components;
      } while (w != v);
      ++components;
    }
  };
  for (std::uint32_t v = 0; v < n; ++v) {
    if (index[v] < 0) connect(v);
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    for (const auto& [w, grows] : edges[v]) {
      if (grows && component[v] == component[w]) return Count::infinite();
    }
  }

  // Finite: materialize word sets to a fixpoint.
  std::vector<std::set<EncodedWord>> words(n);
  std::size_t total = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : r.productions()) {
      std::set<EncodedWord> partial{EncodedWord{}};
      for (const auto& s : p.body) {
        std::set<EncodedWord> extended;
        if (s.terminal) {
          for (auto w : partial) {
            w.push_back(s.id);
            extended.insert(std::move(w));
          }
        } else {
          for (const auto& prefix : partial) {
            for (const auto& suffix : words[s.id]) {
              EncodedWord w = prefix;
              w.insert(w.end(), suffix.begin(), suffix.end());
              extended.insert(std::move(w));
              if (extended.size() > budget.max_words) {
                throw Error(ErrorCode::ResourceCap, "grammar word budget exhausted");
              }
            }
          }
        }
        partial = std::move(extended);
        if (partial.empty()) break;
      }
      for (auto& w : partial) {
        if (words[p.lhs].insert(w).second) {
          changed = true;
          if (++total > budget.max_words) throw Error(ErrorCode::ResourceCap, "grammar word budget exhausted");
        }
      }
    }
  }
  return Count(static_cast<unsigned long long>(words[r.start()].size()));
}

CfgRecognizer::CfgRecognizer(const Cfg& g) : terminals_(g.terminals()) {
  const Cfg r = cfg_reduce(g);
  if (r.productions().empty()) {
    empty_language_ = true;
    return;
  }
  const std::uint32_t t = static_cast<std::uint32_t>(terminals_.size());
  auto sym = [t](const GrammarSymbol& s) { return s.terminal ? s.id : t + s.id; };
  std::uint32_t next = t + static_cast<std::uint32_t>(r.nonterminals().size());
  start_ = t + r.start();

  struct Rule {
    std::uint32_t lhs;
    std::vector<std::uint32_t> body;
  };
  std::vector<Rule> rules;
  for (const auto& p : r.productions()) {
    std::vector<std::uint32_t> body;
    for (const auto& s : p.body) body.push_back(sym(s));
    std::uint32_t lhs = t + p.lhs;
    // Binarize: A -> X1 X2 ... Xm becomes A -> X1 N1, N1 -> X2 N2, ...
    while (body.size() > 2) {
      const std::uint32_t fresh = next++;
      rules.push_back({lhs, {body[0], fresh}});
      body.erase(body.begin());
      lhs = fresh;
    }
    rules.push_back({lhs, std::move(body)});
  }
  symbol_count_ = next;

  nullable_.assign(symbol_count_, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& rule : rules) {
      if (nullable_[rule.lhs]) continue;
      if (std::all_of(rule.body.begin(), rule.body.end(), [&](std::uint32_t s) { return nullable_[s] != 0; })) {
        nullable_[rule.lhs] = 1;
        changed = true;
      }
    }
  }

  // Unit derivations: y => A when A -> y, A -> y z with z nullable, or A -> z y with z nullable.
  std::vector<std::vector<std::uint32_t>> up(symbol_count_);
  for (const auto& rule : rules) {
    if (rule.body.size() == 1) up[rule.body[0]].push_back(rule.lhs);
    if (rule.body.size() == 2) {
      if (nullable_[rule.body[1]]) up[rule.body[0]].push_back(rule.lhs);
      if (nullable_[rule.body[0]]) up[rule.body[1]].push_back(rule.lhs);
      binary_.push_back({rule.lhs, rule.body[0], rule.body[1]});
    }
  }
  closure_.resize(symbol_count_);
  std::vector<std::uint8_t> seen(symbol_count_, 0);
  for (std::uint32_t s = 0; s < symbol_count_; ++s) {
    std::vector<std::uint32_t> todo{s};
    seen[s] = 1;
    while (!todo.empty()) {
      const std::uint32_t x = todo.back();
      todo.pop_back();
      closure_[s].push_back(x);
      for (auto a : up[x]) {
        if (!seen[a]) {
          seen[a] = 1;
          todo.push_back(a);
        }
      }
    }
    for (auto x : closure_[s]) seen[x] = 0;
  }
}

bool CfgRecognizer::accepts(const Word& w) const { return accepts(terminals_.encode(w)); }

bool CfgRecognizer::accepts(std::span<const SymbolId> w) const {
  for (auto s : w) {
    if (s >= terminals_.size()) throw Error(ErrorCode::UnknownSymbol, "terminal id out of range");
  }
  if (empty_language_) return false;
  const std::size_t n = w.size();
  if (n == 0) return nullable_[start_] != 0;

  // chart[(i * (n + 1) + j) * symbols + x]: x derives w[i, j).
  const std::size_t m = symbol_count_;
  std::vector<std::uint8_t> chart((n + 1) * (n + 1) * m, 0);
  auto cell = [&](std::size_t i, std::size_t j) { return chart.data() + (i * (n + 1) + j) * m; };
  auto add = [&](std::uint8_t* c, std::uint32_t x) {
    for (auto y : closure_[x]) c[y] = 1;
  };
  for (std::size_t i = 0; i < n; ++i) add(cell(i, i + 1), w[i]);
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len;
      std::uint8_t* target = cell(i, j);
      for (std::size_t k = i + 1; k < j; ++k) {
        const std::uint8_t* left = cell(i, k);
        const std::uint8_t* right = cell(k, j);
        for (const auto& b : binary_) {
          if (left[b.left] && right[b.right] && !target[b.lhs]) add(target, b.lhs);
        }
      }
    }
  }
  return cell(0, n)[start_] != 0;
}

bool cfg_member(const Cfg& g, const Word& w) { return CfgRecognizer(g).accepts(w); }

}  // namespace langgen
