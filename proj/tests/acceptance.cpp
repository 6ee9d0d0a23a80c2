// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "langgen/automaton_ops.hpp"
#include "langgen/error.hpp"
#include "langgen/generatability.hpp"
#include "langgen/grammar.hpp"
#include "langgen/pda.hpp"
#include "langgen/tm.hpp"
#include "langgen/witness.hpp"
#include "support/machines.hpp"
#include "support/oracles.hpp"
#include "support/pdas.hpp"

using namespace langgen;
using witness::WitnessParams;

namespace {

// Pinned limits.
constexpr std::size_t kRandomFamilies = 200;
constexpr std::size_t kRandomMaxStates = 4;
constexpr std::size_t kRandomMaxMembers = 3;
constexpr double kCharacterizationSeconds = 60.0;
constexpr double kWitnessSeconds = 120.0;
constexpr double kHistorySeconds = 60.0;
constexpr std::size_t kSampledSets = 10'000;
constexpr std::size_t kAdversarialEvery = 4;
constexpr std::size_t kSubsetCheckWords = 2'000;
constexpr std::size_t kPoolFloor = 4'096;
constexpr std::size_t kPoolCeiling = 300'000;
constexpr std::size_t kLoopingMaxLen = 40;
constexpr std::size_t kPdaPoolMaxLen = 12;
constexpr std::size_t kNfaSuite = 200;
constexpr std::size_t kNfaMaxLen = 10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
  void note(std::string what) { notes.push_back(std::move(what)); }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

int failed_criteria = 0;
std::set<int> selected;  // empty: run everything

void report(int id, const std::string& title, const Verdict& v) {
  std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << " " << title;
  for (const auto& n : v.notes) std::cout << "; " << n;
  std::cout << "\n";
  constexpr std::size_t kShown = 12;
  for (std::size_t i = 0; i < v.failures.size() && i < kShown; ++i) std::cout << "    " << v.failures[i] << "\n";
  if (v.failures.size() > kShown) std::cout << "    ... " << v.failures.size() - kShown << " more\n";
  if (!v.pass) ++failed_criteria;
}

template <typename F>
void run_criterion(int id, const std::string& title, F&& body) {
  if (!selected.empty() && !selected.count(id)) return;
  Verdict v;
  try {
    body(v);
  } catch (const std::exception& e) {
    v.fail(std::string("unexpected exception: ") + e.what());
  }
  report(id, title, v);
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

std::string to_str(const BigNat& x) { return x.str(); }

Alphabet binary() { return Alphabet({"0", "1"}); }

// ---------------------------------------------------------------------------
// Random family suite shared by criteria 1 and 2.

struct RandomCase {
  FamilySpec family;
  std::size_t n = 0;  // largest member state count
};

std::vector<RandomCase> random_suite() {
  std::mt19937_64 rng(0x5eed0001);
  std::uniform_int_distribution<std::size_t> states(1, kRandomMaxStates);
  std::vector<RandomCase> out;
  for (std::size_t i = 0; i < kRandomFamilies; ++i) {
    const std::size_t k = 1 + i % kRandomMaxMembers;
    std::vector<FamilyMember> members;
    std::size_t n = 0;
    while (members.size() < k) {
      const std::size_t s = states(rng);
      auto a = i % 2 == 0 ? oracle::random_dfa(rng, binary(), s, 0.65, 0.5)
                          : oracle::random_automaton(rng, binary(), s, 0.3, 0.4);
      if (is_finite(a)) continue;
      n = std::max(n, a.state_count());
      members.push_back({"L" + std::to_string(members.size() + 1), std::move(a)});
    }
    out.push_back({FamilySpec(std::move(members)), n});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Witness instances.

struct WitnessCase {
  std::size_t n;
  std::uint64_t k;
};

const std::vector<WitnessCase> kWitnessCases = {{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}};

// Full-family intersection sizes, counted once by enumerating block
// sequences directly.
const std::map<std::tuple<std::size_t, std::uint64_t, bool>, std::uint64_t> kFrozenCardinality = {
    {{1, 2, false}, 6},  {{2, 2, false}, 6},   {{2, 3, false}, 42},    {{3, 2, false}, 6},
    {{1, 2, true}, 21},  {{2, 2, true}, 105},  {{2, 3, true}, 44205},  {{3, 2, true}, 657},
};

std::string label(const WitnessParams& p) {
  return std::string(p.padded ? "padded" : "basic") + "(" + std::to_string(p.n) + "," + std::to_string(p.k) + ")";
}

std::size_t ruler_length(const WitnessParams& p) {
  const std::size_t blocks = (std::size_t{1} << p.k) - 1;
  return (p.padded ? 2 : 1) * p.n * blocks;
}

// ---------------------------------------------------------------------------
// Criterion 6 helpers.

struct WordHash {
  std::size_t operator()(const EncodedWord& w) const { return boost::hash_range(w.begin(), w.end()); }
};

/// Uniform sampler over the words of length <= max_len of a language.
class UniformWords {
 public:
  UniformWords(const Automaton& a, std::size_t max_len) : dfa_(trim(determinize(a))), max_len_(max_len) {
    const std::size_t q = dfa_.state_count();
    const std::size_t sigma = dfa_.alphabet().size();
    ways_.assign(max_len + 1, std::vector<double>(q, 0.0));
    if (q == 0) return;
    for (StateId s = 0; s < q; ++s) ways_[0][s] = dfa_.is_final(s) ? 1.0 : 0.0;
    for (std::size_t len = 1; len <= max_len; ++len) {
      for (StateId s = 0; s < q; ++s) {
        double total = 0;
        for (SymbolId a = 0; a < sigma; ++a) {
          if (auto to = dfa_.step(s, a)) total += ways_[len - 1][*to];
        }
        ways_[len][s] = total;
      }
    }
    for (std::size_t len = 0; len <= max_len; ++len) total_ += ways_[len][dfa_.initial()];
  }

  /// Number of words of length <= max_len (as a double; exact below 2^53).
  double total() const { return total_; }

  EncodedWord sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double pick = u(rng) * total_;
    std::size_t len = 0;
    for (; len < max_len_; ++len) {
      const double w = ways_[len][dfa_.initial()];
      if (pick < w) break;
      pick -= w;
    }
    EncodedWord out;
    StateId q = dfa_.initial();
    for (std::size_t left = len; left > 0; --left) {
      double r = u(rng) * ways_[left][q];
      SymbolId chosen = 0;
      StateId next = q;
      bool found = false;
      for (SymbolId a = 0; a < dfa_.alphabet().size(); ++a) {
        auto to = dfa_.step(q, a);
        if (!to || ways_[left - 1][*to] == 0) continue;
        chosen = a;
        next = *to;
        found = true;
        if (r < ways_[left - 1][*to]) break;
        r -= ways_[left - 1][*to];
      }
      if (!found) throw std::logic_error("sampler reached a dead state");
      out.push_back(chosen);
      q = next;
    }
    return out;
  }

 private:
  Automaton dfa_;
  std::size_t max_len_;
  std::vector<std::vector<double>> ways_;
  double total_ = 0;
};

double log_binomial(double n, double r) {
  return std::lgamma(n + 1) - std::lgamma(r + 1) - std::lgamma(n - r + 1);
}

/// Calls f on every r-subset of {0..n-1} as a sorted index vector.
void for_each_combination(std::size_t n, std::size_t r, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  if (r > n) return;
  while (true) {
    f(idx);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void generator_contract(const WitnessParams& p, Verdict& v, std::mt19937_64& rng) {
  const FamilySpec family = witness::build(p);
  const GeneratabilityReport rep = analyze(family);
  const std::size_t m = static_cast<std::size_t>(rep.minimal_m);
  const CanonicalGenerator gen(family);

  // Largest finite intersection and the length bound B.
  const SubsetReport* largest = nullptr;
  std::size_t bound = 0;
  for (const auto& row : rep.subsets) {
    if (!row.finite) continue;
    if (!largest || row.cardinality > largest->cardinality) largest = &row;
    const Automaton d = trim(determinize(product_intersection(family.select(row.mask))));
    bound = std::max(bound, d.state_count());
  }
  for (const auto& mem : family.members()) bound = std::max(bound, 2 * mem.automaton.state_count());

  std::vector<EncodedWord> largest_words;
  if (largest && largest->longest) {
    const Automaton inter = product_intersection(family.select(largest->mask));
    largest_words = enumerate_encoded(inter, largest->longest->value().convert_to<std::size_t>());
  }
  const std::unordered_set<EncodedWord, WordHash> largest_set(largest_words.begin(), largest_words.end());

  std::size_t sets_checked = 0;
  std::size_t exhaustive_members = 0;
  std::size_t adversarial = 0;

  for (std::size_t j = 0; j < family.size(); ++j) {
    const Automaton& lang = family[j];
    const std::string who = label(p) + " member " + std::to_string(j + 1);
    std::map<std::uint64_t, bool> subset_ok;

    auto check = [&](std::span<const EncodedWord> examples) {
      ++sets_checked;
      const GenerationResult r = gen.generate(examples);
      if (r.status != GenerationStatus::Infinite) {
        v.fail(who + ": status FiniteOutput on " + std::to_string(examples.size()) + " examples");
        return;
      }
      auto [it, fresh] = subset_ok.try_emplace(r.consistent_mask, true);
      if (!fresh) {
        if (!it->second) v.fail(who + ": output not contained in the member");
        return;
      }
      bool ok = (r.consistent_mask >> j & 1) && is_subset(*r.output, lang);
      for (const auto& w : enumerate_encoded(*r.output, bound, kSubsetCheckWords)) {
        ok = ok && oracle::accepts(lang, w);
      }
      it->second = ok;
      if (!ok) v.fail(who + ": output not contained in the member (mask " + std::to_string(r.consistent_mask) + ")");
    };

    const UniformWords sampler(lang, bound);
    const double available = sampler.total();
    const std::size_t pool_target = std::min(kPoolCeiling, std::max(kPoolFloor, 4 * m));

    std::vector<EncodedWord> pool;
    if (available <= static_cast<double>(pool_target)) {
      pool = enumerate_encoded(lang, bound);
    } else {
      std::unordered_set<EncodedWord, WordHash> seen;
      while (seen.size() < pool_target) seen.insert(sampler.sample(rng));
      pool.assign(seen.begin(), seen.end());
    }
    if (pool.size() < m) {
      v.fail(who + ": only " + std::to_string(pool.size()) + " words up to length " + std::to_string(bound));
      continue;
    }

    const bool exhaustive = available <= static_cast<double>(pool_target) &&
                            log_binomial(static_cast<double>(pool.size()), static_cast<double>(m)) <=
                                std::log(static_cast<double>(kSampledSets));
    if (exhaustive) {
      ++exhaustive_members;
      std::vector<EncodedWord> chosen(m);
      for_each_combination(pool.size(), m, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < m; ++i) chosen[i] = pool[idx[i]];
        check(chosen);
      });
      continue;
    }

    const bool contains_largest = largest && (largest->mask >> j & 1);
    std::vector<EncodedWord> outside;
    if (contains_largest) {
      for (const auto& w : pool) {
        if (!largest_set.count(w)) outside.push_back(w);
        if (outside.size() == 64) break;
      }
    }
    std::vector<EncodedWord> crafted = largest_words;
    crafted.emplace_back();
    std::uniform_int_distribution<std::size_t> pick_outside(0, outside.empty() ? 0 : outside.size() - 1);
    for (std::size_t s = 0; s < kSampledSets; ++s) {
      if (contains_largest && !outside.empty() && s % kAdversarialEvery == 0) {
        // The whole largest finite intersection plus one word outside it.
        ++adversarial;
        crafted.back() = outside[pick_outside(rng)];
        check(crafted);
        continue;
      }
      for (std::size_t i = 0; i < m; ++i) {
        std::uniform_int_distribution<std::size_t> d(i, pool.size() - 1);
        std::swap(pool[i], pool[d(rng)]);
      }
      check(std::span<const EncodedWord>(pool.data(), m));
    }
  }

  // Below the bound: the largest finite intersection itself is a failing set.
  if (m >= 2) {
    if (largest_words.size() != m - 1) {
      v.fail(label(p) + ": largest finite intersection has " + std::to_string(largest_words.size()) +
             " words, expected " + std::to_string(m - 1));
    } else {
      const GenerationResult r = gen.generate(std::span<const EncodedWord>(largest_words));
      v.expect(r.status == GenerationStatus::FiniteOutput,
               label(p) + ": " + std::to_string(m - 1) + " examples from the largest finite intersection did not fail");
    }
  }
  v.note(label(p) + " m=" + std::to_string(m) + " B=" + std::to_string(bound) + " sets=" +
         std::to_string(sets_checked) + (exhaustive_members ? " (" + std::to_string(exhaustive_members) + " exhaustive)" : "") +
         " adversarial=" + std::to_string(adversarial));
}

// ---------------------------------------------------------------------------
// Criterion 8 pools.

std::set<Word> structured_pool(const Alphabet& sigma, const std::vector<Word>& seeds, std::size_t max_len) {
  std::set<Word> pool;
  auto add = [&](const Word& w) {
    if (w.size() <= max_len) pool.insert(w);
  };
  for (const auto& s : seeds) {
    for (std::size_t len = 0; len <= s.size(); ++len) add(Word(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len)));
    for (std::size_t i = 0; i < s.size(); ++i) {
      Word del = s;
      del.erase(del.begin() + static_cast<std::ptrdiff_t>(i));
      add(del);
      for (const auto& a : sigma.symbols()) {
        Word sub = s;
        sub[i] = a;
        add(sub);
      }
    }
    for (std::size_t i = 0; i <= s.size(); ++i) {
      for (const auto& a : sigma.symbols()) {
        Word ins = s;
        ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(i), a);
        add(ins);
      }
    }
  }
  for (const auto& w : oracle::all_words(sigma.size(), 2)) add(sigma.decode(w));
  return pool;
}

/// History-shaped words from the first configurations of a run.
std::vector<Word> history_seeds(const tm::TuringMachine& m) {
  std::vector<Word> seeds;
  const auto run = tm::run(m, 6);
  for (std::size_t c = 1; c <= run.history.size(); ++c) {
    const std::vector<tm::Configuration> prefix(run.history.begin(), run.history.begin() + static_cast<std::ptrdiff_t>(c));
    for (std::uint32_t bits = 0; bits < (1u << std::min<std::size_t>(c, 3)); ++bits) {
      std::vector<bool> b(c);
      for (std::size_t i = 0; i < c; ++i) b[i] = i < 3 && (bits >> i & 1);
      seeds.push_back(tm::history_word(m, prefix, b));
    }
  }
  return seeds;
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  std::cout << std::unitbuf;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

  std::vector<RandomCase> suite;
  std::vector<GeneratabilityReport> suite_reports;

  run_criterion(1, "characterization equivalence", [&](Verdict& v) {
    const auto start = Clock::now();
    suite = random_suite();
    std::size_t nontrivial = 0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
      suite_reports.push_back(analyze(suite[i].family));
      const BigNat by_oracle = minimal_m_oracle(suite[i].family);
      const BigNat& by_analysis = suite_reports.back().minimal_m;
      v.expect(by_analysis == by_oracle, "family " + std::to_string(i) + ": analyze " + to_str(by_analysis) +
                                             " vs oracle " + to_str(by_oracle));
      nontrivial += by_analysis > 1;
    }
    const double secs = seconds_since(start);
    v.expect(secs < kCharacterizationSeconds, "runtime " + fmt_seconds(secs) + " exceeds limit");
    v.note(std::to_string(suite.size()) + " families, " + std::to_string(nontrivial) + " with minimal_m > 1");
    v.note("runtime " + fmt_seconds(secs) + " (limit " + fmt_seconds(kCharacterizationSeconds) + ")");
  });

  run_criterion(2, "upper bound on random families", [&](Verdict& v) {
    v.expect(suite.size() == suite_reports.size() && !suite.empty(), "random suite unavailable");
    std::size_t violations = 0;
    for (std::size_t i = 0; i < suite_reports.size(); ++i) {
      const std::size_t k = suite[i].family.size();
      const std::size_t n = suite[i].n;
      std::size_t nk = 1;
      for (std::size_t j = 0; j < k; ++j) nk *= n;
      const auto& r = suite_reports[i];
      if (r.minimal_m > pow2(nk)) {
        ++violations;
        v.fail("family " + std::to_string(i) + ": minimal_m " + to_str(r.minimal_m) + " > 2^" + std::to_string(nk));
      }
      for (const auto& row : r.subsets) {
        if (row.intersection_states > nk) {
          ++violations;
          v.fail("family " + std::to_string(i) + ": product of " + std::to_string(row.intersection_states) +
                 " states > " + std::to_string(nk));
        }
      }
    }
    v.note(std::to_string(violations) + " violations");
  });

  run_criterion(3, "witness exactness", [&](Verdict& v) {
    const auto start = Clock::now();
    std::size_t checked = 0;
    for (const bool padded : {false, true}) {
      for (const auto& c : kWitnessCases) {
        const WitnessParams p{c.n, c.k, padded};
        std::optional<FamilySpec> fam;
        try {
          fam.emplace(witness::build(p));
        } catch (const Error& e) {
          v.fail(label(p) + ": cannot be built (" + e.what() + ")");
          continue;
        }
        ++checked;
        const auto r = analyze(*fam);
        const auto& full = r.subsets.back();
        v.expect(full.finite, label(p) + ": full intersection is infinite");
        if (!full.finite) continue;
        const std::size_t want_longest = ruler_length(p);
        v.expect(full.longest && full.longest->is_finite() && full.longest->value() == want_longest,
                 label(p) + ": longest word " + (full.longest ? full.longest->to_string() : "none") + ", expected " +
                     std::to_string(want_longest));
        const BigNat lower = pow2(p.n * ((std::size_t{1} << p.k) - 1));
        if (padded) {
          v.expect(full.cardinality.value() >= lower,
                   label(p) + ": cardinality " + full.cardinality.to_string() + " below " + to_str(lower));
        }
        const auto frozen = kFrozenCardinality.find({p.n, p.k, p.padded});
        if (frozen == kFrozenCardinality.end()) {
          v.fail(label(p) + ": no frozen cardinality");
        } else {
          v.expect(full.cardinality.value() == frozen->second, label(p) + ": cardinality " +
                                                                   full.cardinality.to_string() + ", frozen " +
                                                                   std::to_string(frozen->second));
        }
        const std::size_t state_limit = padded ? 128 * p.n + 32 : 64 * p.n + 16;
        for (std::size_t j = 0; j < fam->size(); ++j) {
          v.expect(!is_finite((*fam)[j]), label(p) + ": member " + std::to_string(j + 1) + " is finite");
          const std::size_t states = trim(determinize((*fam)[j])).state_count();
          v.expect(states <= state_limit, label(p) + ": member " + std::to_string(j + 1) + " has " +
                                              std::to_string(states) + " DFA states > " + std::to_string(state_limit));
        }
      }
    }
    const double secs = seconds_since(start);
    v.expect(secs < kWitnessSeconds, "runtime " + fmt_seconds(secs) + " exceeds limit");
    v.note(std::to_string(checked) + " of " + std::to_string(2 * kWitnessCases.size()) + " instances built and checked");
    v.note("runtime " + fmt_seconds(secs) + " (limit " + fmt_seconds(kWitnessSeconds) + ")");
  });

  run_criterion(4, "non-generatability of padded(1,2)", [&](Verdict& v) {
    const WitnessParams p{1, 2, true};
    const FamilySpec f = witness::build(p);
    const BigNat m = minimal_m_oracle(f);
    const BigNat below = pow2(p.n * ((std::size_t{1} << p.k) - 1));
    const bool at_below = is_m_generatable(f, below);
    const bool at_m = is_m_generatable(f, m);
    v.expect(!at_below, "generatable at " + to_str(below));
    v.expect(at_m, "not generatable at oracle minimal_m " + to_str(m));
    v.note("oracle minimal_m " + to_str(m) + ", m=" + to_str(below) + " -> " + (at_below ? "true" : "false") +
           ", m=" + to_str(m) + " -> " + (at_m ? "true" : "false"));
  });

  run_criterion(5, "growth in k of padded(1,k)", [&](Verdict& v) {
    std::vector<std::optional<BigNat>> values;
    std::string shown;
    for (std::uint64_t k = 1; k <= 3; ++k) {
      const WitnessParams p{1, k, true};
      std::optional<BigNat> m;
      try {
        m = analyze(witness::build(p)).minimal_m;
        shown += " k=" + std::to_string(k) + ":" + to_str(*m);
      } catch (const Error& e) {
        v.fail(label(p) + ": cannot be built (" + e.what() + ")");
        shown += " k=" + std::to_string(k) + ":n/a";
      }
      values.push_back(m);
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] && values[i - 1]) {
        v.expect(*values[i] > *values[i - 1], "not strictly increasing at k=" + std::to_string(i + 1));
      } else {
        v.fail("growth from k=" + std::to_string(i) + " to k=" + std::to_string(i + 1) + " cannot be compared");
      }
    }
    for (std::uint64_t k = 2; k <= 3; ++k) {
      const auto& m = values[k - 1];
      const BigNat floor = pow2((std::size_t{1} << k) - 1) + 1;
      if (m) v.expect(*m >= floor, "k=" + std::to_string(k) + ": minimal_m below " + to_str(floor));
    }
    v.note("minimal_m" + shown);
  });

  run_criterion(6, "generator contract", [&](Verdict& v) {
    std::mt19937_64 rng(0x5eed0006);
    const auto start = Clock::now();
    for (const bool padded : {false, true}) {
      for (const auto& c : kWitnessCases) {
        const WitnessParams p{c.n, c.k, padded};
        try {
          witness::validate(p);
        } catch (const Error&) {
          // Families that cannot be built have no members to quantify over.
          v.note(label(p) + " skipped (not constructible)");
          continue;
        }
        generator_contract(p, v, rng);
      }
    }
    v.note("runtime " + fmt_seconds(seconds_since(start)));
  });

  run_criterion(7, "history count of the encoded pair", [&](Verdict& v) {
    const auto start = Clock::now();
    for (const auto& named : machines::halting_suite()) {
      const auto pair = tm::encode(named.machine);
      const auto expected = tm::history_words(named.machine, 64);
      if (expected.empty()) {
        v.fail(named.name + ": no history words");
        continue;
      }
      const std::size_t len = expected.begin()->size();
      const auto got = tm::joint_intersection(pair.first, pair.second, len);
      const std::size_t want = std::size_t{1} << named.halting_configs;
      v.expect(got.size() == want,
               named.name + ": " + std::to_string(got.size()) + " words, expected " + std::to_string(want));
      v.expect(got == expected, named.name + ": intersection differs from the history words");
      v.note(named.name + " " + std::to_string(got.size()));
    }
    for (const auto& m : {machines::loop_right(), machines::loop_bounce()}) {
      const auto pair = tm::encode(m);
      const auto got = tm::joint_intersection(pair.first, pair.second, kLoopingMaxLen);
      v.expect(got.empty(), "looping machine: " + std::to_string(got.size()) + " words up to length " +
                                std::to_string(kLoopingMaxLen));
    }
    const double secs = seconds_since(start);
    v.expect(secs < kHistorySeconds, "runtime " + fmt_seconds(secs) + " exceeds limit");
    v.note("runtime " + fmt_seconds(secs) + " (limit " + fmt_seconds(kHistorySeconds) + ")");
  });

  run_criterion(8, "PDA to CFG agreement", [&](Verdict& v) {
    struct Entry {
      std::string name;
      Pda pda;
      std::vector<Word> seeds;
      bool exhaustive;
    };
    std::vector<Entry> entries;
    entries.push_back({"zero_one", pdas::zero_one_pda(), {}, true});
    entries.push_back({"palindrome", pdas::palindrome_pda(), {}, true});
    std::vector<machines::Named> all = machines::halting_suite();
    for (auto& l : machines::looping_suite()) all.push_back(std::move(l));
    for (const auto& named : all) {
      auto seeds = history_seeds(named.machine);
      if (named.halting_configs > 0) {
        for (const auto& w : tm::history_words(named.machine, 64)) seeds.push_back(w);
      }
      const auto pair = tm::encode(named.machine);
      entries.push_back({named.name + ".first", pair.first, seeds, false});
      entries.push_back({named.name + ".second", pair.second, seeds, false});
    }

    std::size_t words = 0;
    std::size_t accepted = 0;
    for (const auto& e : entries) {
      const Cfg g = pda_to_cfg(e.pda);
      const CfgRecognizer cyk(g);
      std::vector<Word> pool;
      if (e.exhaustive) {
        for (const auto& w : oracle::all_words(e.pda.input_alphabet().size(), kPdaPoolMaxLen)) {
          pool.push_back(e.pda.input_alphabet().decode(w));
        }
      } else {
        const auto s = structured_pool(e.pda.input_alphabet(), e.seeds, kPdaPoolMaxLen);
        pool.assign(s.begin(), s.end());
      }
      for (const auto& w : pool) {
        const bool by_pda = pda_member(e.pda, w);
        const bool by_cfg = cyk.accepts(w);
        ++words;
        accepted += by_pda;
        if (by_pda != by_cfg) {
          std::string shown;
          for (const auto& s : w) shown += s + " ";
          v.fail(e.name + ": disagreement on [" + shown + "] pda=" + (by_pda ? "accept" : "reject"));
        }
      }
    }
    for (const auto& named : machines::halting_suite()) {
      if (named.halting_configs < 2) continue;
      const auto pair = tm::encode(named.machine);
      for (const auto* p : {&pair.first, &pair.second}) {
        const Count c = cfg_cardinality(pda_to_cfg(*p));
        v.expect(c.is_infinite(), named.name + ": encoded language has finite cardinality " + c.to_string());
      }
    }
    v.note(std::to_string(entries.size()) + " PDAs, " + std::to_string(words) + " words (" + std::to_string(accepted) +
           " accepted)");
  });

  run_criterion(9, "halting driver with truthful oracles", [&](Verdict& v) {
    struct Case {
      std::string name;
      tm::TuringMachine machine;
      bool swap;
      std::size_t t;  // 0 for machines that never halt
      int expected_case;  // 0 when any case is acceptable
    };
    const std::vector<Case> cases = {
        {"halt_t1", machines::halt_t1(), false, 1, 1},
        {"halt_t1 swapped", machines::halt_t1(), true, 1, 2},
        {"halt_t2", machines::halt_t2(), false, 2, 3},
        {"halt_t4", machines::halt_t4(), false, 4, 3},
        {"loop_right", machines::loop_right(), false, 0, 0},
        {"loop_bounce", machines::loop_bounce(), false, 0, 0},
        {"stall_left", machines::stall_left(), false, 0, 0},
    };
    std::set<int> seen_cases;
    bool finite_first = false;
    for (const auto& c : cases) {
      auto pair = tm::encode(c.machine);
      if (c.swap) std::swap(pair.first, pair.second);
      // Truthful m: one more than the largest finite intersection among
      // {L_1}, {L_2}, {L_1, L_2}. The joint one has exactly 2^t words.
      const Count c1 = cfg_cardinality(pda_to_cfg(pair.first));
      const Count c2 = cfg_cardinality(pda_to_cfg(pair.second));
      BigNat largest = c.t ? pow2(c.t) : BigNat(0);
      if (c1.is_finite()) largest = std::max(largest, c1.value());
      if (c2.is_finite()) largest = std::max(largest, c2.value());
      const BigNat truthful = largest + 1;

      const auto verdict = tm::decide_halting(c.machine, pair, tm::OracleChoice{truthful});
      const bool should_halt = c.t > 0;
      v.expect(verdict.halts == should_halt, c.name + ": wrong verdict");
      if (should_halt) v.expect(verdict.configs == c.t, c.name + ": reported t=" + std::to_string(verdict.configs));
      if (c.expected_case) {
        v.expect(verdict.proof_case == c.expected_case,
                 c.name + ": case " + std::to_string(verdict.proof_case) + ", expected " + std::to_string(c.expected_case));
      }
      seen_cases.insert(verdict.proof_case);
      finite_first = finite_first || (verdict.proof_case == 1 && c1.is_finite());

      // T must be the smallest exponent allowed by the case in hand, and the
      // driver simulates max(T, 1) configurations.
      BigNat must_exceed;
      bool strict = true;
      switch (verdict.proof_case) {
        case 1: must_exceed = c1.is_finite() ? c1.value() : BigNat(0); break;
        case 2: must_exceed = c2.is_finite() ? c2.value() : BigNat(0); break;
        default: must_exceed = truthful; strict = false; break;
      }
      std::size_t T = 0;
      while (strict ? pow2(T) <= must_exceed : pow2(T) < must_exceed) ++T;
      const std::size_t simulated = std::max<std::size_t>(T, 1);
      v.expect(verdict.bound == simulated, c.name + ": simulated " + std::to_string(verdict.bound) +
                                               " configurations, expected " + std::to_string(simulated));
      if (should_halt) v.expect(c.t <= simulated, c.name + ": halts beyond the bound");
      const auto rerun = tm::run(c.machine, simulated);
      v.expect((rerun.outcome == tm::RunOutcome::Halted) == verdict.halts,
               c.name + ": verdict disagrees with a run of T configurations");
      v.note(c.name + " case " + std::to_string(verdict.proof_case) + " m=" + to_str(truthful) + " T=" +
             std::to_string(T) + (verdict.halts ? " halts" : " does-not-halt"));
    }
    v.expect(seen_cases == std::set<int>{1, 2, 3}, "not all three cases exercised");
    v.expect(finite_first, "no machine with finite L_1");
  });

  run_criterion(10, "determinization and counting", [&](Verdict& v) {
    std::mt19937_64 rng(0x5eed0010);
    std::uniform_int_distribution<std::size_t> states(1, 5), letters(1, 2);
    std::uniform_real_distribution<double> density(0.1, 0.6);
    std::size_t finite = 0;
    for (std::size_t i = 0; i < kNfaSuite; ++i) {
      std::vector<Symbol> syms;
      const std::size_t sigma_size = letters(rng);
      for (std::size_t s = 0; s < sigma_size; ++s) syms.push_back(std::string(1, static_cast<char>('a' + s)));
      const Alphabet sigma(syms);
      const auto nfa = oracle::random_automaton(rng, sigma, states(rng), density(rng), 0.4);
      const auto dfa = determinize(nfa);
      v.expect(is_deterministic(dfa), "nfa " + std::to_string(i) + ": result not deterministic");
      for (const auto& w : oracle::all_words(sigma_size, kNfaMaxLen)) {
        if (oracle::accepts(nfa, w) != oracle::accepts(dfa, w)) {
          v.fail("nfa " + std::to_string(i) + ": languages differ");
          break;
        }
      }
      const Count c = cardinality(nfa);
      const std::size_t n = nfa.state_count();
      const auto words = oracle::language(nfa, 2 * n);
      const bool long_word = std::any_of(words.begin(), words.end(), [&](const EncodedWord& w) { return w.size() >= n; });
      v.expect(c.is_infinite() == long_word, "nfa " + std::to_string(i) + ": finiteness disagrees with enumeration");
      if (c.is_finite()) {
        ++finite;
        v.expect(c.value() == words.size(), "nfa " + std::to_string(i) + ": cardinality " + c.to_string() + " vs " +
                                                std::to_string(words.size()) + " enumerated");
      }
    }
    v.note(std::to_string(kNfaSuite) + " automata, " + std::to_string(finite) + " finite");
  });

  std::cout << (failed_criteria == 0 ? "all criteria passed" : std::to_string(failed_criteria) + " criteria failed")
            << "\n";
  return failed_criteria == 0 ? 0 : 1;
}
