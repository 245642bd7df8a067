#include "sumsetlab/report_json.hpp"

namespace sumsetlab {

Json to_json(const SubsetMask& m) { return Json(m.elements()); }

Json to_json(const TorsionValue& t) {
  if (t.is_infinite()) return "INFINITY";
  return t.value();
}

Json to_json(const ValidationReport& r) {
  Json j;
  j["valid"] = r.ok();
  j["associativity_checked"] = r.associativity_checked;
  Json list = Json::array();
  for (const auto& v : r.violations)
    list.push_back({{"axiom", axiom_name(v.axiom)}, {"message", v.message}, {"witness", v.witness}});
  j["violations"] = std::move(list);
  return j;
}

Json to_json(const BoundCheck& c) {
  Json j;
  j["group"] = c.group_label;
  j["theorem"] = theorem_name(c.theorem);
  j["size_a"] = c.size_a;
  j["size_b"] = c.size_b;
  j["product_size"] = c.product_size;
  j["p_g"] = to_json(c.p_g);
  j["bound"] = c.bound;
  j["holds"] = c.holds;
  j["a"] = to_json(c.a);
  j["b"] = to_json(c.b);
  return j;
}

Json to_json(const VerificationReport& r, bool include_timing) {
  Json j;
  j["group"] = r.group_label;
  j["order"] = r.group_order;
  j["p_g"] = to_json(r.p_g);
  j["theorem"] = theorem_name(r.theorem);
  j["mode"] = mode_name(r.mode);
  if (r.caps) {
    Json caps;
    caps["max_a_size"] = r.caps->max_a_size ? Json(*r.caps->max_a_size) : Json(nullptr);
    caps["max_b_size"] = r.caps->max_b_size ? Json(*r.caps->max_b_size) : Json(nullptr);
    caps["sum_cap"] = r.caps->sum_cap ? Json(*r.caps->sum_cap) : Json(nullptr);
    j["caps"] = std::move(caps);
  }
  if (r.plan) {
    Json plan;
    plan["seed"] = r.plan->seed;
    plan["count"] = r.plan->count;
    if (r.plan->distribution == SamplingPlan::Distribution::kUniformNonempty) {
      plan["distribution"] = "uniform_nonempty";
    } else {
      plan["distribution"] = "fixed_sizes";
      plan["size_a"] = r.plan->size_a;
      plan["size_b"] = r.plan->size_b;
    }
    plan["generator"] = "mt19937_64(splitmix64(seed + (i+1)*0x9E3779B97F4A7C15))";
    j["plan"] = std::move(plan);
  }
  j["pairs_checked"] = r.pairs_checked;
  j["violation_count"] = r.violation_count;
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  j["violations"] = std::move(violations);
  j["extremal_count"] = r.extremal_count;
  Json witnesses = Json::array();
  for (const auto& w : r.extremal_witnesses) witnesses.push_back(to_json(w));
  j["extremal_witnesses"] = std::move(witnesses);
  if (include_timing) j["wall_time_seconds"] = r.wall_time.count();
  return j;
}

Json to_json(const ProofTrace& t) {
  Json j;
  j["group"] = t.group_label;
  j["order"] = t.group_order;
  j["p_g"] = to_json(t.p_g);
  j["a"] = to_json(t.a);
  j["b"] = to_json(t.b);
  j["size_a"] = t.size_a;
  j["size_b"] = t.size_b;
  j["product_size"] = t.product_size;
  j["traced_bound"] = t.traced_bound;
  j["all_hold"] = t.all_hold;
  j["base_case"] = t.base_case;
  if (t.base_case) {
    j["base_reason"] = t.base_reason;
    return j;
  }
  j["kernel"] = t.kernel;
  j["quotient_order"] = t.quotient_order;
  j["swapped"] = t.swapped;
  j["alpha"] = t.alpha;
  j["beta"] = t.beta;
  j["pivot_cosets"] = t.pivot_cosets;
  j["pivot_sizes"] = t.pivot_sizes;
  j["other_cosets"] = t.other_cosets;
  j["other_sizes"] = t.other_sizes;
  Json blocks = Json::array();
  for (const auto& bc : t.block_checks) {
    Json b;
    b["pivot_coset"] = bc.pivot_coset;
    b["other_coset"] = bc.other_coset;
    b["product_coset"] = bc.product_coset;
    b["pivot_size"] = bc.pivot_size;
    b["other_size"] = bc.other_size;
    b["product_size"] = bc.product_size;
    b["kernel_product_size"] = bc.kernel_product_size;
    b["lower_bound"] = bc.lower_bound;
    b["holds"] = bc.holds;
    b["kernel_trace"] = bc.kernel_trace.empty() ? Json(nullptr) : to_json(bc.kernel_trace.front());
    blocks.push_back(std::move(b));
  }
  j["block_checks"] = std::move(blocks);
  const auto& q = t.quotient_check;
  j["quotient_check"] = {{"product_size", q.product_size},
                         {"lower_bound", q.lower_bound},
                         {"p_quotient", to_json(q.p_quotient)},
                         {"hypothesis_holds", q.hypothesis_holds},
                         {"holds", q.holds}};
  const auto& d = t.disjointness_check;
  j["disjointness_check"] = {{"distinct_cosets", d.distinct_cosets},
                             {"expected", d.expected},
                             {"cosets_outside", d.cosets_outside},
                             {"holds", d.holds}};
  const auto& f = t.final_chain;
  j["final_chain"] = {{"direct", f.direct},
                      {"block_sum", f.block_sum},
                      {"block_bound", f.block_bound},
                      {"closed_form", f.closed_form},
                      {"beta_pivot", f.beta_pivot},
                      {"alpha_pivot", f.alpha_pivot},
                      {"pivot_side_size", f.pivot_side_size},
                      {"target", f.target},
                      {"holds", f.holds}};
  return j;
}

Json to_json(const SubsetDecomposition& d) {
  Json j;
  j["first"] = to_json(d.first);
  j["second"] = to_json(d.second);
  Json blocks = Json::array();
  for (const auto& b : d.blocks)
    blocks.push_back({{"coset", b.coset}, {"kernel_part", to_json(b.kernel_part)}, {"size", b.size}});
  j["blocks"] = std::move(blocks);
  return j;
}

Json to_json(const ExtremalResult& r, const FiniteGroup& g) {
  Json j;
  j["group"] = g.label();
  j["bound"] = r.bound;
  j["pairs_searched"] = r.pairs_searched;
  j["truncated"] = r.truncated;
  j["count"] = r.pairs.size();
  Json pairs = Json::array();
  for (const auto& p : r.pairs) pairs.push_back({{"a", to_json(p.a)}, {"b", to_json(p.b)}});
  j["pairs"] = std::move(pairs);
  return j;
}

Json to_json(const FactorSystem& fs, const PairRepresentation& psi) {
  const bool embedded = fs.parent != nullptr;
  auto kernel_elt = [&](Element local) { return embedded ? fs.kernel_elements[local] : local; };
  const std::size_t nk = fs.kernel_order(), nq = fs.quotient_order();
  Json j;
  j["group"] = embedded ? fs.parent->label() : std::string("(hand-built)");
  j["order"] = nk * nq;
  j["indices"] = embedded ? "parent" : "local";
  Json kernel = Json::array();
  for (Element k = 0; k < nk; ++k) kernel.push_back(kernel_elt(k));
  j["kernel"] = std::move(kernel);
  j["quotient_order"] = nq;
  if (embedded) {
    j["cosets"] = fs.cosets;
    j["representatives"] = fs.reps;
  }
  Json phi = Json::array();
  for (Element h = 0; h < nq; ++h) {
    Json row = Json::array();
    for (Element k = 0; k < nk; ++k) row.push_back(kernel_elt(fs.phi_at(h, k)));
    phi.push_back(std::move(row));
  }
  j["phi"] = std::move(phi);
  Json eta = Json::array();
  for (Element h1 = 0; h1 < nq; ++h1) {
    Json row = Json::array();
    for (Element h2 = 0; h2 < nq; ++h2) row.push_back(kernel_elt(fs.eta_at(h1, h2)));
    eta.push_back(std::move(row));
  }
  j["eta"] = std::move(eta);
  Json pairs = Json::array();
  for (const auto& p : psi.forward) pairs.push_back({kernel_elt(p.kernel), p.coset});
  j["psi"] = std::move(pairs);
  return j;
}

}  // namespace sumsetlab
