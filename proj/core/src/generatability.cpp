#include "langgen/generatability.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

#include "langgen/automaton_ops.hpp"
#include "langgen/error.hpp"

namespace langgen {
namespace {

void require_analyzable(const FamilySpec& family) {
  if (family.size() > kMaxAnalyzedFamily) {
    throw Error(ErrorCode::InvalidArgument,
                "family of " + std::to_string(family.size()) + " members is too large to analyze");
  }
}

std::uint64_t full_mask(std::size_t k) { return (std::uint64_t{1} << k) - 1; }

template <typename WordT>
void require_distinct(std::span<const WordT> examples) {
  if (examples.empty()) throw Error(ErrorCode::InvalidArgument, "no examples given");
  auto hash = [](const WordT* w) { return boost::hash_range(w->begin(), w->end()); };
  auto equal = [](const WordT* a, const WordT* b) { return *a == *b; };
  std::unordered_set<const WordT*, decltype(hash), decltype(equal)> seen(examples.size() * 2, hash, equal);
  for (const auto& w : examples) {
    if (!seen.insert(&w).second) throw Error(ErrorCode::InvalidArgument, "examples are not distinct");
  }
}

}  // namespace

FamilySpec::FamilySpec(std::vector<FamilyMember> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error(ErrorCode::EmptyInput, "family has no members");
  for (const auto& m : members_) {
    if (!(m.automaton.alphabet() == members_.front().automaton.alphabet())) {
      throw Error(ErrorCode::AlphabetMismatch, "member '" + m.name + "' uses a different alphabet");
    }
    if (is_finite(m.automaton)) {
      throw Error(ErrorCode::InfiniteMemberViolation, "member '" + m.name + "' has a finite language");
    }
  }
}

std::vector<Automaton> FamilySpec::select(std::uint64_t mask) const {
  std::vector<Automaton> out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (mask >> i & 1) out.push_back(members_[i].automaton);
  }
  return out;
}

GeneratabilityReport analyze(const FamilySpec& family) {
  require_analyzable(family);
  GeneratabilityReport report;
  BigNat largest_finite = 0;
  for (std::uint64_t mask = 1; mask <= full_mask(family.size()); ++mask) {
    const Automaton product = product_intersection(family.select(mask));
    SubsetReport row;
    row.mask = mask;
    row.intersection_states = product.state_count();
    row.cardinality = cardinality(product);
    row.finite = row.cardinality.is_finite();
    row.empty = row.finite && row.cardinality.value() == 0;
    row.longest = longest_word_length(product);
    if (row.finite && row.cardinality.value() > largest_finite) largest_finite = row.cardinality.value();
    report.subsets.push_back(std::move(row));
  }
  report.minimal_m = largest_finite + 1;
  return report;
}

bool is_m_generatable(const GeneratabilityReport& report, const BigNat& m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be at least 1");
  return m >= report.minimal_m;
}

bool is_m_generatable(const FamilySpec& family, const BigNat& m) {
  return is_m_generatable(analyze(family), m);
}

CanonicalGenerator::CanonicalGenerator(FamilySpec family) : family_(std::move(family)) {
  if (family_.size() > 63) throw Error(ErrorCode::InvalidArgument, "family too large");
  tables_.reserve(family_.size());
  for (const auto& m : family_.members()) {
    const Automaton d = determinize(m.automaton);
    DenseDfa t;
    t.sigma = d.alphabet().size();
    t.initial = static_cast<std::int32_t>(d.initial());
    t.next.assign(d.state_count() * t.sigma, -1);
    t.final.resize(d.state_count());
    for (StateId q = 0; q < d.state_count(); ++q) {
      t.final[q] = d.is_final(q);
      for (SymbolId a = 0; a < t.sigma; ++a) {
        if (auto to = d.step(q, a)) t.next[q * t.sigma + a] = static_cast<std::int32_t>(*to);
      }
    }
    tables_.push_back(std::move(t));
  }
}

bool CanonicalGenerator::DenseDfa::accepts(std::span<const SymbolId> w) const {
  std::int32_t q = initial;
  for (auto s : w) {
    if (s >= sigma) throw Error(ErrorCode::UnknownSymbol, "symbol id out of range");
    q = next[static_cast<std::size_t>(q) * sigma + s];
    if (q < 0) return false;
  }
  return final[static_cast<std::size_t>(q)] != 0;
}

GenerationResult CanonicalGenerator::generate(std::span<const Word> examples) const {
  std::vector<EncodedWord> encoded;
  encoded.reserve(examples.size());
  for (const auto& w : examples) encoded.push_back(family_.alphabet().encode(w));
  return generate(std::span<const EncodedWord>(encoded));
}

GenerationResult CanonicalGenerator::generate(std::span<const EncodedWord> examples) const {
  require_distinct(examples);
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const bool all = std::all_of(examples.begin(), examples.end(),
                                 [&](const EncodedWord& w) { return tables_[i].accepts(w); });
    if (all) mask |= std::uint64_t{1} << i;
  }
  if (mask == 0) throw Error(ErrorCode::InconsistentExamples, "no member contains every example");

  Entry entry;
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(mask);
    if (it != cache_.end()) entry = it->second;
  }
  if (!entry.automaton) {
    auto product = std::make_shared<const Automaton>(product_intersection(family_.select(mask)));
    entry.finite = is_finite(*product);
    entry.automaton = std::move(product);
    std::lock_guard lock(mutex_);
    cache_.emplace(mask, entry);
  }
  return {entry.automaton, entry.finite ? GenerationStatus::FiniteOutput : GenerationStatus::Infinite, mask};
}

GenerationResult canonical_generate(const FamilySpec& family, std::span<const Word> examples) {
  return CanonicalGenerator(family).generate(examples);
}

namespace {

/// Deterministic view of a subfamily whose states are tuples of per-member
/// state sets. Only tuples with every component nonempty are kept.
struct TupleDfa {
  std::vector<std::vector<std::int64_t>> next;  // [node][symbol] -> node or -1
  std::vector<std::uint8_t> accepting;
};

TupleDfa explore_tuples(const std::vector<Automaton>& members, std::size_t sigma) {
  using Key = std::vector<StateId>;  // concatenated sorted sets separated by a sentinel
  constexpr StateId kSep = UINT32_MAX;
  std::unordered_map<Key, std::size_t, boost::hash<Key>> ids;
  std::vector<std::vector<std::vector<StateId>>> nodes;
  TupleDfa dfa;

  auto key_of = [&](const std::vector<std::vector<StateId>>& sets) {
    Key k;
    for (const auto& s : sets) {
      k.insert(k.end(), s.begin(), s.end());
      k.push_back(kSep);
    }
    return k;
  };
  auto add = [&](std::vector<std::vector<StateId>> sets) -> std::size_t {
    auto [it, inserted] = ids.try_emplace(key_of(sets), nodes.size());
    if (inserted) {
      bool acc = true;
      for (std::size_t i = 0; i < members.size(); ++i) {
        acc = acc && std::any_of(sets[i].begin(), sets[i].end(),
                                 [&](StateId q) { return members[i].is_final(q); });
      }
      nodes.push_back(std::move(sets));
      dfa.accepting.push_back(acc);
      dfa.next.emplace_back(sigma, -1);
    }
    return it->second;
  };

  std::vector<std::vector<StateId>> start;
  for (const auto& m : members) start.push_back({m.initial()});
  add(std::move(start));
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    for (SymbolId s = 0; s < sigma; ++s) {
      std::vector<std::vector<StateId>> sets(members.size());
      bool alive = true;
      for (std::size_t i = 0; i < members.size() && alive; ++i) {
        std::set<StateId> image;
        for (StateId q : nodes[id][i]) {
          for (StateId r : members[i].successors(q, s)) image.insert(r);
        }
        sets[i].assign(image.begin(), image.end());
        alive = !image.empty();
      }
      if (alive) {
        const std::size_t target = add(std::move(sets));
        dfa.next[id][s] = static_cast<std::int64_t>(target);
      }
    }
  }
  return dfa;
}

}  // namespace

BigNat minimal_m_oracle(const FamilySpec& family, OracleBudget budget) {
  require_analyzable(family);
  const std::size_t sigma = family.alphabet().size();
  std::size_t words_used = 0;
  BigNat largest_finite = 0;

  for (std::uint64_t mask = 1; mask <= full_mask(family.size()); ++mask) {
    const auto members = family.select(mask);
    const TupleDfa dfa = explore_tuples(members, sigma);
    const std::size_t bound = dfa.accepting.size();

    // Infinite iff some word has length in [bound, 2 * bound).
    bool infinite = false;
    std::vector<std::uint8_t> layer(bound, 0), next(bound, 0);
    layer[0] = 1;
    for (std::size_t len = 0; len < 2 * bound && !infinite; ++len) {
      std::fill(next.begin(), next.end(), 0);
      bool any = false;
      for (std::size_t v = 0; v < bound; ++v) {
        if (!layer[v]) continue;
        if (len >= bound && dfa.accepting[v]) infinite = true;
        for (SymbolId s = 0; s < sigma; ++s) {
          if (dfa.next[v][s] >= 0) {
            next[static_cast<std::size_t>(dfa.next[v][s])] = 1;
            any = true;
          }
        }
      }
      layer.swap(next);
      if (!any) break;
    }
    if (infinite) continue;

    // Minimum distance to an accepting node, for pruning dead prefixes.
    constexpr std::size_t kFar = SIZE_MAX;
    std::vector<std::size_t> dist(bound, kFar);
    for (std::size_t v = 0; v < bound; ++v) {
      if (dfa.accepting[v]) dist[v] = 0;
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t v = 0; v < bound; ++v) {
        for (SymbolId s = 0; s < sigma; ++s) {
          const auto t = dfa.next[v][s];
          if (t >= 0 && dist[static_cast<std::size_t>(t)] != kFar &&
              dist[static_cast<std::size_t>(t)] + 1 < dist[v]) {
            dist[v] = dist[static_cast<std::size_t>(t)] + 1;
            changed = true;
          }
        }
      }
    }

    // Materialize every word of length < 2 * bound.
    std::set<EncodedWord> words;
    EncodedWord prefix;
    const std::size_t limit = 2 * bound - 1;
    auto visit = [&](auto&& self, std::size_t node) -> void {
      if (dfa.accepting[node]) {
        words.insert(prefix);
        if (++words_used > budget.max_words) {
          throw Error(ErrorCode::ResourceCap, "oracle word budget exhausted");
        }
      }
      if (prefix.size() == limit) return;
      for (SymbolId s = 0; s < sigma; ++s) {
        const auto t = dfa.next[node][s];
        if (t < 0) continue;
        const auto target = static_cast<std::size_t>(t);
        if (dist[target] == kFar || dist[target] > limit - prefix.size() - 1) continue;
        prefix.push_back(s);
        self(self, target);
        prefix.pop_back();
      }
    };
    visit(visit, 0);
    if (words.size() > largest_finite) largest_finite = words.size();
  }
  return largest_finite + 1;
}

}  // namespace langgen
