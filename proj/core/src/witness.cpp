#include "langgen/witness.hpp"

#include <algorithm>
#include <unordered_map>

#include "langgen/automaton_ops.hpp"
#include "langgen/error.hpp"

namespace langgen::witness {
namespace {

enum Cmp : std::uint8_t { Eq = 0, Lt = 1, Gt = 2 };

/// Bit p (0 = most significant) of the n-bit big-endian rendering of value.
int block_bit(std::uint64_t value, std::size_t n, std::size_t p) {
  const std::size_t shift = n - 1 - p;
  if (shift >= 64) return 0;
  return static_cast<int>((value >> shift) & 1U);
}

struct MemberState {
  std::size_t pos = 0;
  Cmp cmp_own = Eq;    // current block vs w_i
  Cmp cmp_limit = Eq;  // current block vs w_k (Gt is dead)
  bool armed = false;  // w_i seen since the last smaller block
  bool constrained = true;

  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(pos) << 8) | (cmp_own << 4) | (cmp_limit << 2) |
           (static_cast<unsigned>(armed) << 1) | static_cast<unsigned>(constrained);
  }
};

}  // namespace

void validate(const WitnessParams& p) {
  if (p.n < 1) throw Error(ErrorCode::InvalidParams, "block length n must be at least 1");
  if (p.k < 1) throw Error(ErrorCode::InvalidParams, "family size k must be at least 1");
  if (p.n < 64 && p.k > (std::uint64_t{1} << p.n)) {
    throw Error(ErrorCode::InvalidParams, "k must not exceed 2^n");
  }
}

Word lex_block(std::size_t n, std::uint64_t i) {
  if (n < 1) throw Error(ErrorCode::InvalidParams, "block length n must be at least 1");
  if (i < 1 || (n < 64 && i > (std::uint64_t{1} << n))) {
    throw Error(ErrorCode::IndexOutOfRange, "block index out of range");
  }
  Word w;
  w.reserve(n);
  for (std::size_t p = 0; p < n; ++p) w.push_back(block_bit(i - 1, n, p) ? "1" : "0");
  return w;
}

Alphabet binary_alphabet() { return Alphabet({"0", "1"}); }

Automaton build_member(const WitnessParams& p, std::uint64_t i, bool restrict_blocks) {
  validate(p);
  if (i < 1 || i > p.k) throw Error(ErrorCode::IndexOutOfRange, "member index out of range");
  const std::uint64_t own = i - 1;
  const std::uint64_t limit = p.k - 1;

  std::vector<MemberState> states;
  std::unordered_map<std::uint64_t, StateId> ids;
  std::vector<Transition> transitions;
  auto intern = [&](const MemberState& s) {
    auto [it, inserted] = ids.try_emplace(s.key(), static_cast<StateId>(states.size()));
    if (inserted) states.push_back(s);
    return it->second;
  };
  intern(MemberState{});

  for (StateId id = 0; id < states.size(); ++id) {
    for (int bit = 0; bit <= 1; ++bit) {
      MemberState s = states[id];
      if (s.constrained) {
        if (s.cmp_own == Eq) {
          const int want = block_bit(own, p.n, s.pos);
          if (bit != want) s.cmp_own = bit < want ? Lt : Gt;
        }
        if (restrict_blocks && s.cmp_limit == Eq) {
          const int want = block_bit(limit, p.n, s.pos);
          if (bit > want) continue;  // block exceeds w_k
          if (bit < want) s.cmp_limit = Lt;
        }
      }
      if (++s.pos == p.n) {
        if (s.constrained) {
          if (s.cmp_own == Lt) {
            s.armed = false;
          } else if (s.cmp_own == Eq) {
            if (s.armed) continue;  // second w_i with no smaller block between
            s.armed = true;
          }
        }
        s.pos = 0;
        s.cmp_own = Eq;
        s.cmp_limit = Eq;
        if (p.padded) s.constrained = !s.constrained;
      }
      transitions.push_back({id, static_cast<SymbolId>(bit), intern(s)});
    }
  }

  std::vector<StateId> finals;
  for (StateId id = 0; id < states.size(); ++id) {
    // Block boundary; in the padded variant an even number of blocks has
    // been read exactly when the next block is constrained.
    if (states[id].pos == 0 && states[id].constrained) finals.push_back(id);
  }
  return trim(Automaton(binary_alphabet(), states.size(), 0, std::move(finals), std::move(transitions)));
}

bool restriction_dropped(const WitnessParams& p) {
  validate(p);
  for (std::uint64_t i = 1; i <= p.k; ++i) {
    if (is_finite(build_member(p, i, true))) return true;
  }
  return false;
}

namespace {

FamilySpec build_family(const WitnessParams& p) {
  const bool restrict_blocks = !restriction_dropped(p);
  std::vector<FamilyMember> members;
  for (std::uint64_t i = 1; i <= p.k; ++i) {
    members.push_back({"L" + std::to_string(i), build_member(p, i, restrict_blocks)});
  }
  return FamilySpec(std::move(members));
}

}  // namespace

FamilySpec build_basic(const WitnessParams& p) {
  WitnessParams q = p;
  q.padded = false;
  return build_family(q);
}

FamilySpec build_padded(const WitnessParams& p) {
  WitnessParams q = p;
  q.padded = true;
  return build_family(q);
}

FamilySpec build(const WitnessParams& p) { return p.padded ? build_padded(p) : build_basic(p); }

BigNat max_blocks(std::uint64_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidParams, "k must be at least 1");
  return pow2(k) - 1;
}

std::size_t state_bound(const WitnessParams& p) { return p.padded ? 128 * p.n + 32 : 64 * p.n + 16; }

Word ruler_word(const WitnessParams& p) {
  validate(p);
  std::vector<std::uint64_t> seq{1};
  for (std::uint64_t j = 2; j <= p.k; ++j) {
    std::vector<std::uint64_t> next{j};
    for (auto v : seq) {
      next.push_back(v);
      next.push_back(j);
    }
    seq = std::move(next);
  }
  const Word free_block(p.n, "1");
  Word w;
  for (auto v : seq) {
    const Word b = lex_block(p.n, v);
    w.insert(w.end(), b.begin(), b.end());
    if (p.padded) w.insert(w.end(), free_block.begin(), free_block.end());
  }
  return w;
}

BigNat expected_longest(const WitnessParams& p) {
  return max_blocks(p.k) * (p.padded ? 2 * p.n : p.n);
}

BigNat padded_lower_bound(const WitnessParams& p) {
  const BigNat exponent = max_blocks(p.k) * p.n;
  if (exponent > 1'000'000) throw Error(ErrorCode::BudgetExceeded, "exponent too large");
  return pow2(static_cast<std::size_t>(exponent));
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

bool WitnessReport::ok() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const WitnessCheck& c) { return c.status == CheckStatus::Fail; });
}

WitnessReport verify_witness(const WitnessParams& p, WitnessBudget budget) {
  validate(p);
  if (p.k > kMaxAnalyzedFamily) throw Error(ErrorCode::BudgetExceeded, "family too large to analyze");

  WitnessReport report;
  report.params = p;
  report.restriction_dropped = restriction_dropped(p);
  const FamilySpec family = build(p);

  BigNat product = 1;
  for (const auto& m : family.members()) {
    report.member_states.push_back(m.automaton.state_count());
    product *= m.automaton.state_count();
  }
  if (product > budget.max_product_states) {
    throw Error(ErrorCode::BudgetExceeded, "product of member state counts " + product.str() +
                                               " exceeds budget " + std::to_string(budget.max_product_states));
  }

  auto add = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)});
  };
  auto skip = [&](std::string name, std::string detail) {
    report.checks.push_back({std::move(name), CheckStatus::Skipped, std::move(detail)});
  };
  const bool degenerate = report.restriction_dropped;
  const std::string degenerate_note = "block restriction dropped at this parameter point";

  {
    bool all = true;
    for (const auto& m : family.members()) all = all && !is_finite(m.automaton);
    add("members-infinite", all, all ? "every member language is infinite" : "a member is finite");
  }
  {
    const std::size_t bound = state_bound(p);
    bool all = true;
    std::string detail = "states";
    for (const auto& m : family.members()) {
      all = all && is_deterministic(m.automaton) && m.automaton.state_count() <= bound;
      detail += " " + std::to_string(m.automaton.state_count());
    }
    add("members-deterministic-bounded", all, detail + " (bound " + std::to_string(bound) + ")");
  }

  report.analysis = analyze(family);
  const SubsetReport& full = report.full_intersection();

  if (degenerate) {
    skip("full-intersection-finite", degenerate_note);
    skip("longest-word", degenerate_note);
  } else {
    add("full-intersection-finite", full.finite, "cardinality " + full.cardinality.to_string());
    const Count expected(expected_longest(p));
    const bool match = full.longest && *full.longest == expected;
    add("longest-word", match,
        "longest " + (full.longest ? full.longest->to_string() : std::string("none")) + ", expected " +
            expected.to_string());
  }

  if (p.padded) {
    if (degenerate) {
      skip("padded-cardinality", degenerate_note);
      skip("not-generatable-at-bound", degenerate_note);
    } else {
      const BigNat bound = padded_lower_bound(p);
      add("padded-cardinality", full.finite && full.cardinality.value() >= bound,
          "cardinality " + full.cardinality.to_string() + " >= " + bound.str());
      add("not-generatable-at-bound", !is_m_generatable(report.analysis, bound),
          "not " + bound.str() + "-generatable");
    }
  }

  {
    const Word ruler = ruler_word(p);
    bool all = true;
    for (const auto& m : family.members()) all = all && member(m.automaton, ruler);
    add("ruler-word-accepted", all, "ruler word of length " + std::to_string(ruler.size()));
  }

  {
    BigNat largest = 0;
    for (const auto& row : report.analysis.subsets) {
      if (row.finite && row.cardinality.value() > largest) largest = row.cardinality.value();
    }
    const BigNat& m = report.analysis.minimal_m;
    bool consistent = m == largest + 1 && is_m_generatable(report.analysis, m);
    if (m >= 2) consistent = consistent && !is_m_generatable(report.analysis, m - 1);
    if (full.finite) consistent = consistent && m > full.cardinality.value();
    add("minimal-m-consistent", consistent, "minimal_m " + m.str());
  }
  return report;
}

}  // namespace langgen::witness
