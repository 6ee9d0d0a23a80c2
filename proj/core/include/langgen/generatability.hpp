#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "langgen/automaton.hpp"
#include "langgen/count.hpp"

namespace langgen {

struct FamilyMember {
  std::string name;
  Automaton automaton;
};

/// A finite, ordered family of infinite regular languages over one alphabet.
class FamilySpec {
 public:
  /// Throws EmptyInput, AlphabetMismatch, or InfiniteMemberViolation.
  explicit FamilySpec(std::vector<FamilyMember> members);

  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<FamilyMember>& members() const noexcept { return members_; }
  const Automaton& operator[](std::size_t i) const { return members_.at(i).automaton; }
  const Alphabet& alphabet() const { return members_.front().automaton.alphabet(); }

  /// Automata of the members selected by a subset bitmask (bit i = member i).
  std::vector<Automaton> select(std::uint64_t mask) const;

 private:
  std::vector<FamilyMember> members_;
};

/// Intersection data for one nonempty subfamily.
struct SubsetReport {
  std::uint64_t mask = 0;
  std::size_t intersection_states = 0;
  bool empty = false;
  bool finite = false;
  Count cardinality;
  std::optional<Count> longest;
};

struct GeneratabilityReport {
  /// One entry per nonempty subset, ascending by bitmask.
  std::vector<SubsetReport> subsets;
  /// 1 + the largest finite intersection size (0 if there is none).
  BigNat minimal_m = 1;
};

/// Largest family size accepted by analyze() and the oracle.
inline constexpr std::size_t kMaxAnalyzedFamily = 24;

GeneratabilityReport analyze(const FamilySpec& family);

/// True iff no subfamily has a finite intersection of size >= m. Requires m >= 1.
bool is_m_generatable(const FamilySpec& family, const BigNat& m);
bool is_m_generatable(const GeneratabilityReport& report, const BigNat& m);

enum class GenerationStatus { Infinite, FiniteOutput };

struct GenerationResult {
  /// Intersection of every member containing all examples.
  std::shared_ptr<const Automaton> output;
  GenerationStatus status = GenerationStatus::Infinite;
  /// Bitmask of the members consistent with the examples.
  std::uint64_t consistent_mask = 0;
};

/// The generator that answers with the intersection of all members
/// consistent with the examples seen so far. Intersections are cached per
/// subfamily, so repeated queries against one family stay cheap. Safe for
/// concurrent use.
class CanonicalGenerator {
 public:
  explicit CanonicalGenerator(FamilySpec family);

  const FamilySpec& family() const noexcept { return family_; }

  /// Examples must be nonempty and pairwise distinct (InvalidArgument
  /// otherwise). Throws InconsistentExamples if no member contains them all.
  GenerationResult generate(std::span<const Word> examples) const;
  GenerationResult generate(std::span<const EncodedWord> examples) const;

 private:
  struct Entry {
    std::shared_ptr<const Automaton> automaton;
    bool finite = false;
  };

  struct DenseDfa {
    std::size_t sigma = 0;
    std::int32_t initial = 0;
    std::vector<std::int32_t> next;  // [state * sigma + symbol], -1 if undefined
    std::vector<std::uint8_t> final;
    bool accepts(std::span<const SymbolId> w) const;
  };

  FamilySpec family_;
  std::vector<DenseDfa> tables_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint64_t, Entry> cache_;
};

GenerationResult canonical_generate(const FamilySpec& family, std::span<const Word> examples);

struct OracleBudget {
  /// Maximum number of words materialized across all subsets.
  std::size_t max_words = 2'000'000;
};

/// Recomputes minimal m by explicit word-set enumeration, independently of
/// the product/determinize/count path used by analyze(). Desk scale only;
/// throws ResourceCap when the word budget is exhausted.
BigNat minimal_m_oracle(const FamilySpec& family, OracleBudget budget = {});

}  // namespace langgen
