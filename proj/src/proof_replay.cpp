#include "sumsetlab/proof_replay.hpp"

#include <algorithm>

#include "sumsetlab/factor_system.hpp"
#include "sumsetlab/sumset.hpp"

namespace sumsetlab {

namespace {

struct Side {
  SubsetDecomposition parts;
  std::size_t size = 0;
};

ProofTrace replay(const FiniteGroup& g, const SubsetMask& a, const SubsetMask& b, std::string& failure) {
  ProofTrace t;
  t.group_label = g.label();
  t.group_order = g.order();
  t.p_g = minimal_torsion(g);
  t.a = a;
  t.b = b;
  t.size_a = a.count();
  t.size_b = b.count();
  t.product_size = product_set(g, a, b).count();
  t.traced_bound = static_cast<std::int64_t>(t.size_a + t.size_b) - 1;

  auto note = [&](bool ok, const std::string& step) {
    if (!ok && failure.empty()) failure = step + " in " + g.label();
    return ok;
  };

  if (g.order() == 1 || g.is_abelian()) {
    t.base_case = true;
    t.base_reason = g.order() == 1 ? "trivial group" : "abelian group";
    t.all_hold = note(static_cast<std::int64_t>(t.product_size) >= t.traced_bound, "base-case bound");
    return t;
  }

  const Subgroup k = choose_decomposition_subgroup(g);
  const Decomposition d = build_factor_system(g, k, RepPolicy::lowest_index());
  const FactorSystem& fs = d.fs;
  t.kernel = k.elements;
  t.quotient_order = fs.quotient_order();

  Side sa{decompose_subset(fs, d.psi, a), t.size_a};
  Side sb{decompose_subset(fs, d.psi, b), t.size_b};
  t.swapped = sa.parts.blocks.size() > sb.parts.blocks.size();
  const Side& pivot_side = t.swapped ? sb : sa;
  const Side& other_side = t.swapped ? sa : sb;
  t.alpha = pivot_side.parts.blocks.size();
  t.beta = other_side.parts.blocks.size();
  for (const auto& blk : pivot_side.parts.blocks) {
    t.pivot_cosets.push_back(blk.coset);
    t.pivot_sizes.push_back(blk.size);
  }
  for (const auto& blk : other_side.parts.blocks) {
    t.other_cosets.push_back(blk.coset);
    t.other_sizes.push_back(blk.size);
  }

  bool ok = true;
  const CosetBlock& pivot = pivot_side.parts.blocks.front();
  const std::size_t nk = fs.kernel_order();
  const ProductEngine g_engine(g);
  const TorsionValue p_kernel = minimal_torsion(fs.kernel);
  for (const CosetBlock& other : other_side.parts.blocks) {
    // Left factor block (coset hl) times right factor block (coset hr).
    const CosetBlock& left = t.swapped ? other : pivot;
    const CosetBlock& right = t.swapped ? pivot : other;
    SubsetMask left_g(g.order()), right_g(g.order());
    left.kernel_part.for_each([&](Element kk) { left_g.set(d.psi.backward[fs.pair_index({kk, left.coset})]); });
    right.kernel_part.for_each([&](Element kk) { right_g.set(d.psi.backward[fs.pair_index({kk, right.coset})]); });
    const SubsetMask block_product = g_engine.product(left_g, right_g);

    // Right factor moved into K: {phi_hl(k') eta(hl, hr)}.
    SubsetMask translated(nk);
    right.kernel_part.for_each([&](Element kk) {
      translated.set(fs.kernel.mul(fs.phi_at(left.coset, kk), fs.eta_at(left.coset, right.coset)));
    });

    BlockCheck bc;
    bc.pivot_coset = pivot.coset;
    bc.other_coset = other.coset;
    bc.product_coset = fs.quotient.mul(left.coset, right.coset);
    bc.pivot_size = pivot.size;
    bc.other_size = other.size;
    bc.product_size = block_product.count();
    bc.lower_bound = static_cast<std::int64_t>(pivot.size + other.size) - 1;
    bool same_coset = true;
    block_product.for_each([&](Element x) { same_coset = same_coset && d.psi.forward[x].coset == bc.product_coset; });

    ok &= note(bc.lower_bound <= p_kernel, "kernel hypothesis |P|+|V'|-1 <= p(K)");
    bc.kernel_trace.push_back(replay(fs.kernel, left.kernel_part, translated, failure));
    bc.kernel_product_size = bc.kernel_trace.front().product_size;
    bc.holds = same_coset && bc.kernel_product_size == bc.product_size &&
               static_cast<std::int64_t>(bc.product_size) >= bc.lower_bound && bc.kernel_trace.front().all_hold;
    ok &= note(bc.holds, "block check for cosets (" + std::to_string(left.coset) + "," +
                             std::to_string(right.coset) + ")");
    t.block_checks.push_back(std::move(bc));
  }

  // A^2 * B^2 in G/K, in the original factor order.
  const SubsetMask quotient_product = product_set(fs.quotient, sa.parts.second, sb.parts.second);
  QuotientCheck& qc = t.quotient_check;
  qc.product_size = quotient_product.count();
  qc.lower_bound = static_cast<std::int64_t>(t.alpha + t.beta) - 1;
  qc.p_quotient = minimal_torsion(fs.quotient);
  qc.hypothesis_holds = qc.lower_bound <= qc.p_quotient;
  qc.holds = static_cast<std::int64_t>(qc.product_size) >= qc.lower_bound;
  ok &= note(qc.hypothesis_holds, "quotient hypothesis alpha+beta-1 <= p(G/K)");
  ok &= note(qc.holds, "quotient bound |A^2 B^2| >= alpha+beta-1");

  DisjointnessCheck& dc = t.disjointness_check;
  std::vector<Element> row;
  for (const auto& bc : t.block_checks) row.push_back(bc.product_coset);
  std::sort(row.begin(), row.end());
  dc.distinct_cosets = static_cast<std::size_t>(std::unique(row.begin(), row.end()) - row.begin());
  dc.expected = t.beta;
  dc.cosets_outside = qc.product_size >= t.beta ? qc.product_size - t.beta : 0;
  dc.holds = dc.distinct_cosets == dc.expected && qc.product_size >= t.beta && dc.cosets_outside + 1 >= t.alpha;
  ok &= note(dc.holds, "disjointness of the pivot-row products");

  FinalChain& fc = t.final_chain;
  const auto alpha = static_cast<std::int64_t>(t.alpha), beta = static_cast<std::int64_t>(t.beta);
  const auto p = static_cast<std::int64_t>(pivot.size);
  fc.direct = static_cast<std::int64_t>(t.product_size);
  fc.block_sum = alpha - 1;
  fc.block_bound = alpha - 1;
  for (const auto& bc : t.block_checks) {
    fc.block_sum += static_cast<std::int64_t>(bc.product_size);
    fc.block_bound += bc.lower_bound;
  }
  fc.closed_form = beta * p + static_cast<std::int64_t>(other_side.size) - beta + alpha - 1;
  fc.beta_pivot = beta * p;
  fc.alpha_pivot = alpha * p;
  fc.pivot_side_size = static_cast<std::int64_t>(pivot_side.size);
  fc.target = t.traced_bound;
  fc.holds = fc.direct >= fc.block_sum && fc.block_sum >= fc.block_bound && fc.block_bound == fc.closed_form &&
             fc.beta_pivot >= fc.alpha_pivot && fc.alpha_pivot >= fc.pivot_side_size && fc.closed_form >= fc.target;
  ok &= note(fc.holds, "final chain");

  t.all_hold = ok;
  return t;
}

}  // namespace

ProofTrace replay_solvable_proof(const FiniteGroup& g, const SubsetMask& a, const SubsetMask& b) {
  if (a.universe() != g.order() || b.universe() != g.order())
    throw std::invalid_argument("replay_solvable_proof: sets do not belong to the group");
  if (a.empty() || b.empty()) throw std::invalid_argument("replay_solvable_proof: sets must be non-empty");
  if (!(static_cast<std::int64_t>(a.count() + b.count()) - 1 <= minimal_torsion(g)))
    throw std::invalid_argument("replay_solvable_proof: requires |A|+|B|-1 <= p(G)");
  if (!is_solvable(g)) throw std::invalid_argument("replay_solvable_proof: group is not solvable");

  std::string failure;
  ProofTrace t = replay(g, a, b, failure);
  if (!t.all_hold)
    throw ProofReplayError("proof replay failed at " + failure +
                               "; the argument is sound, so this indicates an implementation bug",
                           std::move(t));
  return t;
}

}  // namespace sumsetlab
