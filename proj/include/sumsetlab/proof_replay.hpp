#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumsetlab/group.hpp"
#include "sumsetlab/structure.hpp"

namespace sumsetlab {

struct ProofTrace;

/// |P * V_j| >= p + v_j - 1 for the pivot block P against one block V_j of
/// the other set, checked in G and again inside K after translating V_j.
struct BlockCheck {
  Element pivot_coset = 0;
  Element other_coset = 0;
  Element product_coset = 0;
  std::size_t pivot_size = 0;
  std::size_t other_size = 0;
  std::size_t product_size = 0;         // computed in G
  std::size_t kernel_product_size = 0;  // |P^1 * V'_j| computed in K
  std::int64_t lower_bound = 0;
  bool holds = false;
  std::vector<ProofTrace> kernel_trace;  // exactly one entry
};

struct QuotientCheck {
  std::size_t product_size = 0;  // |A^2 * B^2| in G/K
  std::int64_t lower_bound = 0;  // alpha + beta - 1
  TorsionValue p_quotient = TorsionValue::infinity();
  bool hypothesis_holds = false;  // alpha + beta - 1 <= p(G/K)
  bool holds = false;
};

struct DisjointnessCheck {
  std::size_t distinct_cosets = 0;  // distinct second coordinates of the pivot-row products
  std::size_t expected = 0;         // beta
  std::size_t cosets_outside = 0;   // |A^2 * B^2| - beta
  bool holds = false;               // distinct == beta and outside >= alpha - 1
};

/// |A*B| >= sum_j |P*V_j| + alpha - 1 >= sum_j (p + v_j - 1) + alpha - 1
///       = beta*p + |V| - beta + alpha - 1 >= |A| + |B| - 1.
struct FinalChain {
  std::int64_t direct = 0;
  std::int64_t block_sum = 0;
  std::int64_t block_bound = 0;
  std::int64_t closed_form = 0;
  std::int64_t beta_pivot = 0;   // beta * p
  std::int64_t alpha_pivot = 0;  // alpha * p
  std::int64_t pivot_side_size = 0;
  std::int64_t target = 0;       // |A| + |B| - 1
  bool holds = false;
};

struct ProofTrace {
  std::string group_label;
  std::size_t group_order = 0;
  TorsionValue p_g = TorsionValue::infinity();
  SubsetMask a;
  SubsetMask b;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t product_size = 0;  // |A*B| computed directly
  std::int64_t traced_bound = 0;

  bool base_case = false;
  std::string base_reason;  // "trivial group" or "abelian group"

  std::vector<Element> kernel;   // K as parent element indices
  std::size_t quotient_order = 0;
  bool swapped = false;          // A had more coset blocks than B
  std::size_t alpha = 0;
  std::size_t beta = 0;
  std::vector<Element> pivot_cosets;  // alpha cosets of the side with fewer blocks
  std::vector<std::size_t> pivot_sizes;
  std::vector<Element> other_cosets;  // beta cosets of the other side
  std::vector<std::size_t> other_sizes;
  std::vector<BlockCheck> block_checks;
  QuotientCheck quotient_check;
  DisjointnessCheck disjointness_check;
  FinalChain final_chain;

  bool all_hold = false;
};

class ProofReplayError : public std::runtime_error {
 public:
  ProofReplayError(const std::string& what, ProofTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const ProofTrace& trace() const { return trace_; }

 private:
  ProofTrace trace_;
};

/// Replays the induction for |A*B| >= |A|+|B|-1 on concrete sets of a
/// solvable group under the hypothesis |A|+|B|-1 <= p(G).  Abelian groups
/// are checked directly.  Throws std::invalid_argument when the hypotheses
/// fail and ProofReplayError if any recorded inequality is false.
ProofTrace replay_solvable_proof(const FiniteGroup& g, const SubsetMask& a, const SubsetMask& b);

}  // namespace sumsetlab
