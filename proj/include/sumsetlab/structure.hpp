#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sumsetlab/group.hpp"

namespace sumsetlab {

/// A subgroup of some parent FiniteGroup.  The parent is not stored; every
/// operation takes it alongside the subgroup.
struct Subgroup {
  SubsetMask members;
  std::vector<Element> elements;  // sorted, elements[0] is the identity

  std::size_t order() const { return elements.size(); }
  bool contains(Element x) const { return members.test(x); }
  /// Position of x in `elements`, i.e. its local index inside the subgroup.
  std::optional<Element> local_index(Element x) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members == b.members; }
};

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);

/// Smallest subgroup containing `gens` (worklist closure).
Subgroup generated_subgroup(const FiniteGroup& g, const SubsetMask& gens);
/// Smallest normal subgroup containing `gens`.
Subgroup normal_closure(const FiniteGroup& g, const SubsetMask& gens);

bool is_subgroup(const FiniteGroup& g, const SubsetMask& candidate);
bool is_normal(const FiniteGroup& g, const Subgroup& h);

/// Derived subgroup [H,H] of a subgroup H of g.
Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h);
inline Subgroup commutator_subgroup(const FiniteGroup& g) { return commutator_subgroup(g, whole_group(g)); }

/// G, G', G'', ... stopping at the first repeated term.
std::vector<Subgroup> derived_series(const FiniteGroup& g);
bool is_solvable(const FiniteGroup& g);

/// The subgroup re-encoded as a FiniteGroup on its local indices.
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h, const std::string& label = "");

struct QuotientGroup {
  Subgroup kernel;
  std::vector<std::vector<Element>> cosets;  // block b, sorted; block 0 is the kernel
  std::vector<Element> project;              // element -> block
  FiniteGroup table;                         // G/K on block indices

  std::size_t order() const { return cosets.size(); }
};

/// Blocks are the cosets of k ordered by their smallest element.  Throws
/// std::invalid_argument when k is not normal.
QuotientGroup quotient(const FiniteGroup& g, const Subgroup& k);

struct SolvableChain {
  std::vector<Subgroup> groups;            // {1} = G_0 <= ... <= G_n = G
  std::vector<QuotientGroup> quotients;    // quotients[i] = G_{i+1}/G_i, encoded locally
};

/// Reversed derived series with its abelian quotient witnesses; nullopt when
/// g is not solvable.
std::optional<SolvableChain> solvable_chain(const FiniteGroup& g);
/// Direct re-check of every chain invariant against the parent group.
bool check_solvable_chain(const FiniteGroup& g, const SolvableChain& chain);

/// Either a positive integer or INFINITY, which compares above every integer.
class TorsionValue {
 public:
  static TorsionValue infinity() { return TorsionValue(); }
  static TorsionValue finite(std::uint64_t v) { return TorsionValue(v); }

  bool is_infinite() const { return !value_; }
  std::uint64_t value() const { return value_.value(); }

  /// min(this, x), total because INFINITY dominates every integer.
  std::int64_t min_with(std::int64_t x) const {
    if (is_infinite()) return x;
    return std::min<std::int64_t>(static_cast<std::int64_t>(*value_), x);
  }

  friend bool operator==(const TorsionValue&, const TorsionValue&) = default;
  friend std::strong_ordering operator<=>(const TorsionValue& a, const TorsionValue& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
    return *a.value_ <=> *b.value_;
  }
  friend bool operator<=(std::int64_t x, const TorsionValue& t) {
    return t.is_infinite() || x <= static_cast<std::int64_t>(t.value());
  }

  std::string to_string() const { return is_infinite() ? "INFINITY" : std::to_string(*value_); }
  friend std::ostream& operator<<(std::ostream& os, const TorsionValue& t) { return os << t.to_string(); }

 private:
  TorsionValue() = default;
  explicit TorsionValue(std::uint64_t v) : value_(v) {}
  std::optional<std::uint64_t> value_;
};

/// p(G): least element order over non-identity elements.
TorsionValue minimal_torsion(const FiniteGroup& g);
/// Least prime dividing n by trial division; INFINITY for n = 1.
TorsionValue smallest_prime_factor(std::uint64_t n);

/// Proper normal K with G/K abelian: the derived subgroup when it is proper
/// and nontrivial; for abelian G the cyclic subgroup generated by the
/// lowest-index element of order p(G), or {1} when that would be all of G.
/// Throws std::invalid_argument for the trivial group or a non-solvable one.
Subgroup choose_decomposition_subgroup(const FiniteGroup& g);

}  // namespace sumsetlab
