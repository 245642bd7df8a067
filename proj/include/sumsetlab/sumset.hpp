#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumsetlab/group.hpp"
#include "sumsetlab/structure.hpp"

namespace sumsetlab {

/// Left translates x*B computed from Cayley-table rows.
///
/// Groups of order <= 64 get byte-chunk lookup tables, so x*B costs one
/// table read per 8 bits of B; larger groups permute B bit by bit.
class ProductEngine {
 public:
  explicit ProductEngine(const FiniteGroup& g);

  const FiniteGroup& group() const { return *group_; }
  bool single_word() const { return single_word_; }

  SubsetMask translate(Element x, const SubsetMask& b) const;
  /// A*B as the union of x*B over x in A.
  SubsetMask product(const SubsetMask& a, const SubsetMask& b) const;
  /// {ab : a in A, b in B, a != b}.  Since x*B is injective in B, x*(B\{x})
  /// is x*B with the single point x*x removed.
  SubsetMask restricted_product(const SubsetMask& a, const SubsetMask& b) const;

  // Single-word fast path; valid only when single_word().
  std::uint64_t translate_word(Element x, std::uint64_t b) const {
    std::uint64_t out = 0;
    const std::uint64_t* row = chunks_.data() + static_cast<std::size_t>(x) * chunk_count_ * 256;
    for (std::size_t c = 0; c < chunk_count_; ++c, b >>= 8) out |= row[c * 256 + (b & 0xFF)];
    return out;
  }
  std::uint64_t product_word(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t restricted_product_word(std::uint64_t a, std::uint64_t b) const;

 private:
  const FiniteGroup* group_;
  bool single_word_;
  std::size_t chunk_count_ = 0;
  std::vector<std::uint64_t> chunks_;   // [x][chunk][byte] -> mask of x * (byte << 8*chunk)
  std::vector<Element> squares_;
};

SubsetMask product_set(const FiniteGroup& g, const SubsetMask& a, const SubsetMask& b);
SubsetMask restricted_product_set(const FiniteGroup& g, const SubsetMask& a, const SubsetMask& b);

enum class Theorem { kCauchyDavenport, kErdosHeilbronn };
const char* theorem_name(Theorem t);

/// min(p(G), |A|+|B|-1) for CD, min(p(G), |A|+|B|-3) for EH.
std::int64_t bound_value(const TorsionValue& p, std::size_t size_a, std::size_t size_b, Theorem t);

struct BoundCheck {
  std::string group_label;
  Theorem theorem = Theorem::kCauchyDavenport;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t product_size = 0;
  TorsionValue p_g = TorsionValue::infinity();
  std::int64_t bound = 0;
  bool holds = true;
  SubsetMask a;
  SubsetMask b;
};

/// CD requires both sets nonempty (std::invalid_argument otherwise); EH
/// accepts empty sets, where the bound is vacuous or negative.
BoundCheck cd_bound(const FiniteGroup& g, const SubsetMask& a, const SubsetMask& b, Theorem theorem);

struct SizeCaps {
  std::optional<std::size_t> max_a_size;
  std::optional<std::size_t> max_b_size;
  std::optional<std::size_t> sum_cap;  // |A| + |B| <= sum_cap
};

struct SamplingPlan {
  enum class Distribution { kUniformNonempty, kFixedSizes };
  std::uint64_t seed = 0;
  std::uint64_t count = 1;
  Distribution distribution = Distribution::kUniformNonempty;
  std::size_t size_a = 1;  // kFixedSizes only
  std::size_t size_b = 1;
};

struct RunOptions {
  unsigned workers = 0;  // 0 = hardware concurrency
  std::size_t exhaustive_limit = 11;
  std::size_t max_recorded_violations = 1000;
  std::size_t max_recorded_extremal = 10;
  std::uint64_t max_pairs = 4'000'000'000ULL;
};

enum class VerifyMode { kExhaustive, kSizeCapped, kSampled };
const char* mode_name(VerifyMode m);

struct VerificationReport {
  std::string group_label;
  std::size_t group_order = 0;
  TorsionValue p_g = TorsionValue::infinity();
  VerifyMode mode = VerifyMode::kExhaustive;
  Theorem theorem = Theorem::kCauchyDavenport;
  std::optional<SizeCaps> caps;
  std::optional<SamplingPlan> plan;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<BoundCheck> violations;          // first max_recorded_violations, in pair order
  std::uint64_t extremal_count = 0;            // pairs with |A*B| == bound
  std::vector<BoundCheck> extremal_witnesses;  // first max_recorded_extremal, in pair order
  std::chrono::duration<double> wall_time{0};

  bool ok() const { return violation_count == 0; }
};

class SearchSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every ordered pair of nonempty subsets (within caps when given), A in
/// the outer loop and B inner, both in ascending mask value.  Without caps
/// the group order must not exceed opts.exhaustive_limit.
VerificationReport verify_exhaustive(const FiniteGroup& g, Theorem theorem, const std::optional<SizeCaps>& caps = {},
                                     const RunOptions& opts = {});

/// Pair i is drawn from std::mt19937_64 seeded with mix_seed(plan.seed, i),
/// so reports do not depend on the worker count.
VerificationReport verify_sampled(const FiniteGroup& g, Theorem theorem, const SamplingPlan& plan,
                                  const RunOptions& opts = {});

/// SplitMix64 finalizer applied to seed + golden-ratio * index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

struct ExtremalSearch {
  std::size_t size_a = 1;
  std::size_t size_b = 1;
  std::optional<std::size_t> limit;  // stop after this many pairs
  std::uint64_t max_pairs = 50'000'000;
};

struct ExtremalPair {
  SubsetMask a;
  SubsetMask b;
};

struct ExtremalResult {
  std::int64_t bound = 0;
  std::uint64_t pairs_searched = 0;
  std::vector<ExtremalPair> pairs;
  bool truncated = false;
};

/// Pairs with |A|,|B| of the requested sizes and |A*B| = min(p(G), |A|+|B|-1),
/// A outer and B inner in ascending mask value.
ExtremalResult find_extremal(const FiniteGroup& g, const ExtremalSearch& search);

/// All subsets of {0..n-1} with exactly k elements, ascending by mask value.
std::vector<SubsetMask> subsets_of_size(std::size_t n, std::size_t k);

}  // namespace sumsetlab
