#include "sumsetlab/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumsetlab {

std::optional<Element> Subgroup::local_index(Element x) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), x);
  if (it == elements.end() || *it != x) return std::nullopt;
  return static_cast<Element>(it - elements.begin());
}

namespace {

Subgroup from_mask(SubsetMask m) {
  Subgroup h{std::move(m), {}};
  h.elements = h.members.elements();
  return h;
}

}  // namespace

Subgroup trivial_subgroup(const FiniteGroup& g) {
  return from_mask(SubsetMask::from_elements(g.order(), {FiniteGroup::identity()}));
}

Subgroup whole_group(const FiniteGroup& g) { return from_mask(SubsetMask::full(g.order())); }

Subgroup generated_subgroup(const FiniteGroup& g, const SubsetMask& gens) {
  SubsetMask members(g.order());
  members.set(FiniteGroup::identity());
  std::vector<Element> found{FiniteGroup::identity()};
  std::vector<Element> generators = gens.elements();
  // Closing under right multiplication by generators suffices in a finite group.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Element s : generators) {
      const Element y = g.mul(found[i], s);
      if (!members.test(y)) {
        members.set(y);
        found.push_back(y);
      }
    }
  }
  return from_mask(std::move(members));
}

Subgroup normal_closure(const FiniteGroup& g, const SubsetMask& gens) {
  SubsetMask conjugates(g.order());
  gens.for_each([&](Element x) {
    for (Element by = 0; by < g.order(); ++by) conjugates.set(g.conjugate(by, x));
  });
  return generated_subgroup(g, conjugates);
}

bool is_subgroup(const FiniteGroup& g, const SubsetMask& c) {
  if (!c.test(FiniteGroup::identity())) return false;
  const auto elems = c.elements();
  for (Element a : elems) {
    if (!c.test(g.inv(a))) return false;
    for (Element b : elems)
      if (!c.test(g.mul(a, b))) return false;
  }
  return true;
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element k : h.elements)
      if (!h.contains(g.conjugate(x, k))) return false;
  return true;
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h) {
  SubsetMask comms(g.order());
  for (Element a : h.elements)
    for (Element b : h.elements) comms.set(g.commutator(a, b));
  return generated_subgroup(g, comms);
}

std::vector<Subgroup> derived_series(const FiniteGroup& g) {
  std::vector<Subgroup> series{whole_group(g)};
  for (;;) {
    Subgroup next = commutator_subgroup(g, series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

bool is_solvable(const FiniteGroup& g) { return derived_series(g).back().order() == 1; }

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h, const std::string& label) {
  const std::size_t m = h.order();
  std::vector<Element> global_to_local(g.order(), 0);
  for (Element i = 0; i < m; ++i) global_to_local[h.elements[i]] = i;
  CayleyTable t{m, std::vector<Element>(m * m)};
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) t.op[a * m + b] = global_to_local[g.mul(h.elements[a], h.elements[b])];
  return FiniteGroup::from_table(std::move(t), label.empty() ? "subgroup of " + g.label() : label);
}

QuotientGroup quotient(const FiniteGroup& g, const Subgroup& k) {
  if (!is_normal(g, k)) throw std::invalid_argument("quotient: kernel is not a normal subgroup");
  const std::size_t n = g.order();
  constexpr Element kUnassigned = ~Element{0};
  QuotientGroup q{k, {}, std::vector<Element>(n, kUnassigned), FiniteGroup::from_table({1, {0}}, "trivial")};
  for (Element x = 0; x < n; ++x) {
    if (q.project[x] != kUnassigned) continue;
    const auto block = static_cast<Element>(q.cosets.size());
    std::vector<Element> coset;
    coset.reserve(k.order());
    for (Element kk : k.elements) coset.push_back(g.mul(kk, x));
    std::sort(coset.begin(), coset.end());
    for (Element y : coset) q.project[y] = block;
    q.cosets.push_back(std::move(coset));
  }
  const std::size_t m = q.cosets.size();
  CayleyTable t{m, std::vector<Element>(m * m)};
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) t.op[a * m + b] = q.project[g.mul(q.cosets[a][0], q.cosets[b][0])];
  q.table = FiniteGroup::from_table(std::move(t), g.label() + " / K(" + std::to_string(k.order()) + ")");
  return q;
}

std::optional<SolvableChain> solvable_chain(const FiniteGroup& g) {
  auto series = derived_series(g);
  if (series.back().order() != 1) return std::nullopt;
  SolvableChain chain;
  chain.groups.assign(series.rbegin(), series.rend());
  for (std::size_t i = 0; i + 1 < chain.groups.size(); ++i) {
    const Subgroup& lower = chain.groups[i];
    const Subgroup& upper = chain.groups[i + 1];
    const FiniteGroup local = subgroup_as_group(g, upper);
    SubsetMask lower_local(local.order());
    for (Element x : lower.elements) lower_local.set(*upper.local_index(x));
    chain.quotients.push_back(quotient(local, from_mask(std::move(lower_local))));
  }
  return chain;
}

bool check_solvable_chain(const FiniteGroup& g, const SolvableChain& chain) {
  if (chain.groups.empty() || chain.groups.front().order() != 1 || chain.groups.back().order() != g.order())
    return false;
  if (chain.quotients.size() + 1 != chain.groups.size()) return false;
  for (std::size_t i = 0; i + 1 < chain.groups.size(); ++i) {
    const Subgroup& lower = chain.groups[i];
    const Subgroup& upper = chain.groups[i + 1];
    if (!is_subgroup(g, upper.members) || !lower.members.is_subset_of(upper.members)) return false;
    for (Element x : upper.elements)
      for (Element k : lower.elements)
        if (!lower.contains(g.conjugate(x, k))) return false;
    // Abelian quotient: every commutator of the upper group lies in the lower one.
    for (Element a : upper.elements)
      for (Element b : upper.elements)
        if (!lower.contains(g.commutator(a, b))) return false;
    if (!chain.quotients[i].table.is_abelian()) return false;
    if (chain.quotients[i].order() * lower.order() != upper.order()) return false;
  }
  return true;
}

TorsionValue minimal_torsion(const FiniteGroup& g) {
  std::size_t best = 0;
  for (Element x = 1; x < g.order(); ++x) {
    const std::size_t o = g.element_order(x);
    if (best == 0 || o < best) best = o;
  }
  return best == 0 ? TorsionValue::infinity() : TorsionValue::finite(best);
}

TorsionValue smallest_prime_factor(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("smallest_prime_factor: n must be positive");
  if (n == 1) return TorsionValue::infinity();
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return TorsionValue::finite(d);
  return TorsionValue::finite(n);
}

Subgroup choose_decomposition_subgroup(const FiniteGroup& g) {
  if (g.order() <= 1) throw std::invalid_argument("choose_decomposition_subgroup: trivial group");
  if (!is_solvable(g)) throw std::invalid_argument("choose_decomposition_subgroup: group is not solvable");
  Subgroup derived = commutator_subgroup(g);
  if (derived.order() > 1) return derived;  // solvable, so proper
  if (!g.is_abelian())
    throw std::logic_error("choose_decomposition_subgroup: nonabelian group with trivial derived subgroup");
  const std::uint64_t p = minimal_torsion(g).value();
  for (Element x = 1; x < g.order(); ++x) {
    if (g.element_order(x) != p) continue;
    Subgroup k = generated_subgroup(g, SubsetMask::from_elements(g.order(), {x}));
    if (k.order() == g.order()) return trivial_subgroup(g);
    return k;
  }
  throw std::logic_error("choose_decomposition_subgroup: no element of minimal order");
}

}  // namespace sumsetlab
