#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumsetlab/subset_mask.hpp"

namespace sumsetlab {

inline constexpr std::size_t kMaxGroupOrder = 4096;
inline constexpr std::size_t kDefaultAssociativityCap = 512;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw candidate multiplication table: op[a * n + b] = a*b.
struct CayleyTable {
  std::size_t order = 0;
  std::vector<Element> op;

  Element at(Element a, Element b) const { return op[static_cast<std::size_t>(a) * order + b]; }
};

enum class Axiom { kRange, kLatinSquare, kIdentity, kInverse, kAssociativity };

const char* axiom_name(Axiom a);

struct AxiomViolation {
  Axiom axiom;
  std::string message;
  std::vector<Element> witness;  // first failing row/column or triple
};

struct ValidationOptions {
  std::size_t associativity_cap = kDefaultAssociativityCap;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  bool associativity_checked = true;

  bool ok() const { return violations.empty(); }
  bool has(Axiom a) const;
};

/// Checks the group axioms on an arbitrary candidate table.  Violations are
/// data: one entry per failed axiom, carrying the first failing witness.
ValidationReport validate_table(const CayleyTable& table, const ValidationOptions& opts = {});

/// Immutable finite group on element indices 0..n-1 with identity 0.
class FiniteGroup {
 public:
  /// Validates the table and relabels so the identity is index 0.  Throws
  /// GroupError naming the first failing axiom.
  static FiniteGroup from_table(CayleyTable table, std::string label,
                                const ValidationOptions& opts = {});

  std::size_t order() const { return order_; }
  Element mul(Element a, Element b) const { return op_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  static constexpr Element identity() { return 0; }
  const std::string& label() const { return label_; }
  const std::vector<Element>& table() const { return op_; }
  CayleyTable cayley_table() const { return {order_, op_}; }

  /// Smallest m >= 1 with x^m = identity.
  std::size_t element_order(Element x) const;
  bool is_abelian() const;
  Element power(Element x, std::size_t e) const;
  Element conjugate(Element by, Element x) const { return mul(mul(by, x), inv(by)); }
  Element commutator(Element a, Element b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }

  SubsetMask empty_mask() const { return SubsetMask(order_); }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.op_ == b.op_;
  }

 private:
  FiniteGroup(std::size_t n, std::vector<Element> op, std::string label);

  std::size_t order_ = 0;
  std::vector<Element> op_;
  std::vector<Element> inv_;
  std::string label_;
};

ValidationReport validate_group(const FiniteGroup& g, const ValidationOptions& opts = {});

inline std::size_t element_order(const FiniteGroup& g, Element x) { return g.element_order(x); }

// ---------------------------------------------------------------------------
// Group specifications

enum class GroupKind { kCyclic, kDirectProduct, kQuaternion, kDihedral, kHeisenberg, kFrobenius, kTable };

struct GroupSpec {
  GroupKind kind = GroupKind::kCyclic;
  std::vector<long long> params;
  std::vector<GroupSpec> children;  // direct_product factors
  std::optional<std::string> table_source;

  /// Canonical DSL form ("cyclic:25", "frobenius:7:3:2", "product:cyclic:3,cyclic:9", ...).
  std::string to_string() const;
};

/// Parses the group-spec DSL.  Throws GroupError on malformed input.
GroupSpec parse_group_spec(const std::string& text);

/// Throws GroupError when the spec's parameter invariants fail.
void check_group_spec(const GroupSpec& spec);

FiniteGroup build_group(const GroupSpec& spec);
inline FiniteGroup build_group(const std::string& dsl) { return build_group(parse_group_spec(dsl)); }

FiniteGroup cyclic_group(std::size_t n);
/// Elements ordered 1,-1,i,-i,j,-j,k,-k.
FiniteGroup quaternion_group();
/// Order 2n; index a + n*b encodes r^a s^b.
FiniteGroup dihedral_group(std::size_t n);
/// Unitriangular 3x3 matrices over Z/p; index a*p^2 + b*p + c for [[1,a,c],[0,1,b],[0,0,1]].
FiniteGroup heisenberg_group(std::size_t p);
/// Z/p x| Z/q with (x1,y1)(x2,y2) = (x1 + k^y1 x2, y1 + y2); index x*q + y.
FiniteGroup frobenius_group(std::size_t p, std::size_t q, std::size_t k);
/// Index g*|H| + h.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Reads the whitespace table format: n, then n rows of n indices.
CayleyTable read_cayley_table(const std::string& path);
FiniteGroup load_table_group(const std::string& path);

bool is_prime(long long n);

}  // namespace sumsetlab
