#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "langgen/automaton.hpp"
#include "langgen/count.hpp"
#include "langgen/generatability.hpp"

/// Block-structured DFA families whose full intersection is finite but has
/// doubly-exponentially many words in the family size.
///
/// Words are read as consecutive blocks of n bits. With w_1 < w_2 < ... the
/// lexicographically ordered n-bit blocks, member L_i forbids two occurrences
/// of w_i unless some strictly smaller block occurs between them; L_1 thus
/// admits at most one w_1. Every member also rejects blocks greater than w_k,
/// so the intersection only uses w_1..w_k and is bounded by the ruler
/// sequence length 2^k - 1.
///
/// The padded variant constrains only odd-position blocks (1-based), leaves
/// even-position blocks free, and requires an even number of blocks. Every
/// assignment of the free blocks yields a distinct intersection word.
namespace langgen::witness {

struct WitnessParams {
  std::size_t n = 1;
  std::uint64_t k = 1;
  bool padded = false;
};

/// Throws InvalidParams unless n >= 1 and 1 <= k <= 2^n.
void validate(const WitnessParams& p);

/// The i-th (1-based) binary word of length n in lexicographic order.
/// Throws IndexOutOfRange unless 1 <= i <= 2^n.
Word lex_block(std::size_t n, std::uint64_t i);

/// Binary alphabet {0, 1} shared by every witness automaton.
Alphabet binary_alphabet();

/// Member L_i (1-based). With restrict_blocks, blocks greater than w_k are rejected.
Automaton build_member(const WitnessParams& p, std::uint64_t i, bool restrict_blocks);

/// True when the block restriction would make some member finite and is
/// therefore dropped for this parameter point (only k = 1 in practice).
bool restriction_dropped(const WitnessParams& p);

FamilySpec build_basic(const WitnessParams& p);
FamilySpec build_padded(const WitnessParams& p);
/// Dispatches on p.padded.
FamilySpec build(const WitnessParams& p);

/// 2^k - 1: the longest sequence over {1..k} in which any two equal values
/// are separated by a smaller value.
BigNat max_blocks(std::uint64_t k);

/// Declared per-member state bound: 64n + 16 (basic) or 128n + 32 (padded).
std::size_t state_bound(const WitnessParams& p);

/// Ruler block sequence w_k ... w_1 ... w_k of 2^k - 1 blocks. In the padded
/// variant each block is followed by the free block 1^n.
Word ruler_word(const WitnessParams& p);

/// Expected longest word in the full intersection: n(2^k - 1), doubled when padded.
BigNat expected_longest(const WitnessParams& p);

/// Lower bound on the padded full intersection: 2^{n(2^k - 1)}.
BigNat padded_lower_bound(const WitnessParams& p);

enum class CheckStatus { Pass, Fail, Skipped };

struct WitnessCheck {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct WitnessBudget {
  /// Upper limit on the product of member state counts.
  std::uint64_t max_product_states = 20'000'000;
};

struct WitnessReport {
  WitnessParams params;
  bool restriction_dropped = false;
  std::vector<WitnessCheck> checks;
  GeneratabilityReport analysis;
  std::vector<std::size_t> member_states;

  bool ok() const;
  const SubsetReport& full_intersection() const { return analysis.subsets.back(); }
};

/// Builds the family and checks its extremal claims. Throws BudgetExceeded
/// when the analysis would exceed the budget.
WitnessReport verify_witness(const WitnessParams& p, WitnessBudget budget = {});

std::string to_string(CheckStatus s);

}  // namespace langgen::witness
