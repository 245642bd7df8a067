#include "sumsetlab/factor_system.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sumsetlab {

namespace {

std::vector<Element> pick_reps(const QuotientGroup& q, const RepPolicy& policy) {
  const std::size_t m = q.order();
  std::vector<Element> reps(m);
  switch (policy.kind) {
    case RepPolicy::Kind::kLowestIndex:
      for (std::size_t b = 0; b < m; ++b) reps[b] = q.cosets[b].front();
      break;
    case RepPolicy::Kind::kSeededRandom: {
      std::mt19937_64 rng(policy.seed);
      reps[0] = FiniteGroup::identity();
      for (std::size_t b = 1; b < m; ++b) reps[b] = q.cosets[b][rng() % q.cosets[b].size()];
      break;
    }
    case RepPolicy::Kind::kExplicit: {
      if (policy.reps.size() != m)
        throw std::invalid_argument("explicit representatives: expected one per coset (" + std::to_string(m) + ")");
      std::vector<char> filled(m, 0);
      for (Element r : policy.reps) {
        if (r >= q.project.size()) throw std::invalid_argument("explicit representatives: element out of range");
        const Element b = q.project[r];
        if (filled[b]) throw std::invalid_argument("explicit representatives: two representatives for one coset");
        filled[b] = 1;
        reps[b] = r;
      }
      if (reps[0] != FiniteGroup::identity())
        throw std::invalid_argument("explicit representatives: the kernel must be represented by the identity");
      break;
    }
  }
  return reps;
}

}  // namespace

Decomposition build_factor_system(const FiniteGroup& g, const Subgroup& k, const RepPolicy& policy) {
  QuotientGroup q = quotient(g, k);
  const std::size_t nk = k.order(), nq = q.order();
  std::vector<Element> local(g.order(), 0);
  for (Element i = 0; i < nk; ++i) local[k.elements[i]] = i;

  FactorSystem fs{subgroup_as_group(g, k, "K(" + std::to_string(nk) + ") in " + g.label()),
                  q.table,
                  std::vector<Element>(nq * nk),
                  std::vector<Element>(nq * nq),
                  std::make_shared<const FiniteGroup>(g),
                  k.elements,
                  pick_reps(q, policy),
                  q.cosets};

  for (Element h = 0; h < nq; ++h) {
    const Element r = fs.reps[h];
    for (Element kk = 0; kk < nk; ++kk) fs.phi[h * nk + kk] = local[g.conjugate(r, k.elements[kk])];
  }
  for (Element h1 = 0; h1 < nq; ++h1)
    for (Element h2 = 0; h2 < nq; ++h2) {
      const Element prod_rep = fs.reps[q.table.mul(h1, h2)];
      const Element e = g.mul(g.mul(fs.reps[h1], fs.reps[h2]), g.inv(prod_rep));
      if (!k.contains(e)) throw std::logic_error("build_factor_system: eta left the kernel");
      fs.eta[h1 * nq + h2] = local[e];
    }

  PairRepresentation psi{std::vector<KernelCoset>(g.order()), std::vector<Element>(g.order())};
  for (Element x = 0; x < g.order(); ++x) {
    const Element h = q.project[x];
    const Element kpart = g.mul(x, g.inv(fs.reps[h]));
    psi.forward[x] = {local[kpart], h};
    psi.backward[fs.pair_index(psi.forward[x])] = x;
  }
  return {std::move(fs), std::move(psi)};
}

FactorSystem make_factor_system(FiniteGroup kernel, FiniteGroup quotient, std::vector<Element> phi,
                                std::vector<Element> eta) {
  if (phi.size() != kernel.order() * quotient.order() || eta.size() != quotient.order() * quotient.order())
    throw std::invalid_argument("make_factor_system: table sizes do not match |K| and |Q|");
  return FactorSystem{std::move(kernel), std::move(quotient), std::move(phi), std::move(eta), nullptr, {}, {}, {}};
}

KernelCoset star(const FactorSystem& fs, KernelCoset x, KernelCoset y) {
  const FiniteGroup& k = fs.kernel;
  const Element twisted = k.mul(k.mul(x.kernel, fs.phi_at(x.coset, y.kernel)), fs.eta_at(x.coset, y.coset));
  return {twisted, fs.quotient.mul(x.coset, y.coset)};
}

std::vector<std::string> check_factor_system(const FactorSystem& fs) {
  std::vector<std::string> problems;
  const std::size_t nk = fs.kernel_order(), nq = fs.quotient_order();
  if (fs.phi.size() != nk * nq || fs.eta.size() != nq * nq) {
    problems.emplace_back("table sizes do not match |K| and |Q|");
    return problems;
  }
  for (Element v : fs.phi)
    if (v >= nk) {
      problems.emplace_back("phi entry outside the kernel");
      return problems;
    }
  for (Element v : fs.eta)
    if (v >= nk) {
      problems.emplace_back("eta entry outside the kernel");
      return problems;
    }

  for (Element h = 0; h < nq; ++h) {
    std::vector<char> seen(nk, 0);
    bool bijective = true;
    for (Element k = 0; k < nk; ++k) {
      if (seen[fs.phi_at(h, k)]) bijective = false;
      seen[fs.phi_at(h, k)] = 1;
    }
    if (!bijective) problems.push_back("phi[" + std::to_string(h) + "] is not a bijection");
    bool hom = true;
    for (Element a = 0; a < nk && hom; ++a)
      for (Element b = 0; b < nk && hom; ++b)
        hom = fs.phi_at(h, fs.kernel.mul(a, b)) == fs.kernel.mul(fs.phi_at(h, a), fs.phi_at(h, b));
    if (!hom) problems.push_back("phi[" + std::to_string(h) + "] is not a homomorphism");
  }
  for (Element h = 0; h < nq; ++h)
    if (fs.eta_at(0, h) != 0 || fs.eta_at(h, 0) != 0) {
      problems.push_back("eta is not trivial on the identity coset at " + std::to_string(h));
      break;
    }

  const std::size_t n = nk * nq;
  for (Element x = 0; x < n; ++x) {
    if (!(star(fs, fs.pair_at(0), fs.pair_at(x)) == fs.pair_at(x)) ||
        !(star(fs, fs.pair_at(x), fs.pair_at(0)) == fs.pair_at(x))) {
      problems.push_back("(0,0) is not a two-sided identity at pair " + std::to_string(x));
      break;
    }
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      const KernelCoset ab = star(fs, fs.pair_at(a), fs.pair_at(b));
      for (Element c = 0; c < n; ++c) {
        if (!(star(fs, ab, fs.pair_at(c)) == star(fs, fs.pair_at(a), star(fs, fs.pair_at(b), fs.pair_at(c))))) {
          std::ostringstream msg;
          msg << "star is not associative at pairs (" << a << "," << b << "," << c << ")";
          problems.push_back(msg.str());
          return problems;
        }
      }
    }
  return problems;
}

IsomorphismCheck verify_isomorphism(const FactorSystem& fs, const PairRepresentation& psi) {
  if (!fs.parent) return {false, std::nullopt, "factor system has no parent group"};
  const FiniteGroup& g = *fs.parent;
  const std::size_t n = g.order();
  if (psi.forward.size() != n || psi.backward.size() != n || fs.kernel_order() * fs.quotient_order() != n)
    return {false, std::nullopt, "psi does not match the group order"};
  for (Element x = 0; x < n; ++x) {
    const KernelCoset p = psi.forward[x];
    if (p.kernel >= fs.kernel_order() || p.coset >= fs.quotient_order() || psi.backward[fs.pair_index(p)] != x)
      return {false, std::nullopt, "psi is not a bijection at element " + std::to_string(x)};
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (!(psi.forward[g.mul(a, b)] == star(fs, psi.forward[a], psi.forward[b]))) {
        std::ostringstream msg;
        msg << "psi(" << a << "*" << b << ") != psi(" << a << ") star psi(" << b << ")";
        return {false, std::make_pair(a, b), msg.str()};
      }
  return {};
}

FiniteGroup extension_from_factor_system(const FactorSystem& fs) {
  const std::size_t n = fs.kernel_order() * fs.quotient_order();
  CayleyTable t{n, std::vector<Element>(n * n)};
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) t.op[a * n + b] = fs.pair_index(star(fs, fs.pair_at(a), fs.pair_at(b)));
  const std::string label = "extension(" + fs.kernel.label() + " by " + fs.quotient.label() + ")";
  // Systems derived from a parent group are associative by construction.
  const std::size_t cap = fs.parent ? kDefaultAssociativityCap : n;
  return FiniteGroup::from_table(std::move(t), label, {.associativity_cap = cap});
}

SubsetDecomposition decompose_subset(const FactorSystem& fs, const PairRepresentation& psi, const SubsetMask& s) {
  const std::size_t nk = fs.kernel_order(), nq = fs.quotient_order();
  SubsetDecomposition d{SubsetMask(nk), SubsetMask(nq), {}};
  std::vector<SubsetMask> parts(nq, SubsetMask(nk));
  s.for_each([&](Element x) {
    const KernelCoset p = psi.forward.at(x);
    parts[p.coset].set(p.kernel);
    d.first.set(p.kernel);
    d.second.set(p.coset);
  });
  d.second.for_each([&](Element h) {
    const std::size_t size = parts[h].count();
    d.blocks.push_back({h, std::move(parts[h]), size});
  });
  std::stable_sort(d.blocks.begin(), d.blocks.end(),
                   [](const CosetBlock& a, const CosetBlock& b) { return a.size > b.size; });
  return d;
}

}  // namespace sumsetlab
