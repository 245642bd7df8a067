#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumsetlab/group.hpp"
#include "sumsetlab/structure.hpp"

namespace sumsetlab {

/// A point of K x G/K: a kernel-local index and a coset block index.
struct KernelCoset {
  Element kernel = 0;
  Element coset = 0;

  friend bool operator==(const KernelCoset&, const KernelCoset&) = default;
};

/// How coset representatives are picked.  The identity coset is always
/// represented by the identity element.
struct RepPolicy {
  enum class Kind { kLowestIndex, kSeededRandom, kExplicit };
  Kind kind = Kind::kLowestIndex;
  std::uint64_t seed = 0;
  std::vector<Element> reps;  // kExplicit: one element per coset, any order

  static RepPolicy lowest_index() { return {}; }
  static RepPolicy seeded_random(std::uint64_t seed) { return {Kind::kSeededRandom, seed, {}}; }
  static RepPolicy explicit_reps(std::vector<Element> reps) { return {Kind::kExplicit, 0, std::move(reps)}; }
};

/// Data (phi, eta) of K x G/K with the twisted product
///   (k1,h1) * (k2,h2) = (k1 phi_h1(k2) eta(h1,h2), h1 h2).
///
/// `kernel` and `quotient` are encoded on local indices.  The embedding
/// fields (parent, kernel_elements, reps, cosets) are empty for systems
/// assembled by hand rather than by build_factor_system.
struct FactorSystem {
  FiniteGroup kernel;
  FiniteGroup quotient;
  std::vector<Element> phi;  // phi[h * |K| + k] = rep(h) k rep(h)^-1
  std::vector<Element> eta;  // eta[h1 * |Q| + h2] = rep(h1) rep(h2) rep(h1 h2)^-1

  std::shared_ptr<const FiniteGroup> parent;
  std::vector<Element> kernel_elements;  // kernel-local index -> parent element
  std::vector<Element> reps;             // coset block -> representative in parent
  std::vector<std::vector<Element>> cosets;

  std::size_t kernel_order() const { return kernel.order(); }
  std::size_t quotient_order() const { return quotient.order(); }
  Element phi_at(Element h, Element k) const { return phi[static_cast<std::size_t>(h) * kernel_order() + k]; }
  Element eta_at(Element h1, Element h2) const {
    return eta[static_cast<std::size_t>(h1) * quotient_order() + h2];
  }
  Element& eta_at(Element h1, Element h2) { return eta[static_cast<std::size_t>(h1) * quotient_order() + h2]; }

  /// Pair index k * |Q| + h; the identity pair maps to 0.
  Element pair_index(KernelCoset x) const {
    return static_cast<Element>(x.kernel * quotient_order() + x.coset);
  }
  KernelCoset pair_at(Element index) const {
    return {static_cast<Element>(index / quotient_order()), static_cast<Element>(index % quotient_order())};
  }
};

/// The bijection psi: G -> K x G/K, g = kernel_elements[k] * reps[h].
struct PairRepresentation {
  std::vector<KernelCoset> forward;  // parent element -> pair
  std::vector<Element> backward;     // pair index -> parent element
};

struct Decomposition {
  FactorSystem fs;
  PairRepresentation psi;
};

/// Throws std::invalid_argument when k is not normal or explicit reps are
/// inconsistent with the cosets.
Decomposition build_factor_system(const FiniteGroup& g, const Subgroup& k,
                                  const RepPolicy& policy = RepPolicy::lowest_index());

/// Assembles a system from abstract data with no parent group.
FactorSystem make_factor_system(FiniteGroup kernel, FiniteGroup quotient, std::vector<Element> phi,
                                std::vector<Element> eta);

KernelCoset star(const FactorSystem& fs, KernelCoset x, KernelCoset y);

/// Lists violated factor-system invariants: phi tables are automorphisms,
/// eta is trivial on the identity row and column, and star is associative
/// with identity (0, 0).
std::vector<std::string> check_factor_system(const FactorSystem& fs);

struct IsomorphismCheck {
  bool ok = true;
  std::optional<std::pair<Element, Element>> counterexample;  // first failing (g1, g2)
  std::string reason;
};

/// Checks psi(g1 g2) = psi(g1) * psi(g2) for every pair in lexicographic
/// order, plus that forward and backward are mutually inverse.
IsomorphismCheck verify_isomorphism(const FactorSystem& fs, const PairRepresentation& psi);

/// The group (K x G/K, star) on pair indices.  Throws GroupError when star
/// violates the group axioms (only possible for hand-assembled systems).
FiniteGroup extension_from_factor_system(const FactorSystem& fs);

struct CosetBlock {
  Element coset = 0;
  SubsetMask kernel_part;  // over kernel-local indices
  std::size_t size = 0;
};

struct SubsetDecomposition {
  SubsetMask first;   // S^1, over kernel-local indices
  SubsetMask second;  // S^2, over coset blocks
  std::vector<CosetBlock> blocks;  // size descending, ties by ascending coset
};

SubsetDecomposition decompose_subset(const FactorSystem& fs, const PairRepresentation& psi, const SubsetMask& s);

}  // namespace sumsetlab
