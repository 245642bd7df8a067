#include <doctest.h>

#include <vector>

#include "support/oracles.hpp"
#include "sumsetlab/factor_system.hpp"

using namespace sumsetlab;
namespace oracle = sumsetlab::testing;

namespace {

// Quaternion indices: 1, -1, i, -i, j, -j, k, -k
constexpr Element kOne = 0, kMinusOne = 1, kI = 2, kMinusI = 3, kJ = 4, kMinusJ = 5, kK = 6, kMinusK = 7;

Decomposition quaternion_reps_1_j() {
  const FiniteGroup q = quaternion_group();
  const Subgroup k = generated_subgroup(q, SubsetMask::from_elements(8, {kK}));
  return build_factor_system(q, k, RepPolicy::explicit_reps({kOne, kJ}));
}

// psi(g) as (parent kernel element, coset block)
std::pair<Element, Element> psi_parent(const Decomposition& d, Element g) {
  const KernelCoset kc = d.psi.forward[g];
  return {d.fs.kernel_elements[kc.kernel], kc.coset};
}

KernelCoset pair_of(const Decomposition& d, Element kernel_parent, Element coset) {
  for (Element k = 0; k < d.fs.kernel_order(); ++k)
    if (d.fs.kernel_elements[k] == kernel_parent) return {k, coset};
  FAIL("not a kernel element");
  return {};
}

}  // namespace

TEST_CASE("quaternion fixture with representatives 1 and j") {
  const Decomposition d = quaternion_reps_1_j();
  CHECK(d.fs.kernel_elements == std::vector<Element>{kOne, kMinusOne, kK, kMinusK});
  CHECK(d.fs.reps == std::vector<Element>{kOne, kJ});
  using P = std::pair<Element, Element>;
  CHECK(psi_parent(d, kOne) == P{kOne, 0});
  CHECK(psi_parent(d, kMinusOne) == P{kMinusOne, 0});
  CHECK(psi_parent(d, kK) == P{kK, 0});
  CHECK(psi_parent(d, kMinusK) == P{kMinusK, 0});
  CHECK(psi_parent(d, kJ) == P{kOne, 1});
  CHECK(psi_parent(d, kMinusJ) == P{kMinusOne, 1});
  CHECK(psi_parent(d, kI) == P{kMinusK, 1});
  CHECK(psi_parent(d, kMinusI) == P{kK, 1});
  CHECK(d.fs.kernel_elements[d.fs.eta_at(1, 1)] == kMinusOne);  // eta_{Kj,Kj} = j*j = -1

  const KernelCoset ii = star(d.fs, pair_of(d, kMinusK, 1), pair_of(d, kMinusK, 1));
  CHECK(ii == pair_of(d, kMinusOne, 0));
  CHECK(d.psi.forward[quaternion_group().mul(kI, kI)] == ii);
  CHECK(verify_isomorphism(d.fs, d.psi).ok);
  // not a semidirect product: eta is not identically trivial
  bool nontrivial = false;
  for (Element e : d.fs.eta) nontrivial |= e != 0;
  CHECK(nontrivial);
}

TEST_CASE("lowest-index representatives on the quaternion group") {
  const FiniteGroup q = quaternion_group();
  const Decomposition d = build_factor_system(q, generated_subgroup(q, SubsetMask::from_elements(8, {kK})));
  CHECK(d.fs.reps == std::vector<Element>{kOne, kI});
  CHECK(verify_isomorphism(d.fs, d.psi).ok);
}

TEST_CASE("star identity law") {
  const Decomposition d = quaternion_reps_1_j();
  for (Element idx = 0; idx < 8; ++idx) {
    const KernelCoset x = d.fs.pair_at(idx);
    CHECK(star(d.fs, {0, 0}, x) == x);
    CHECK(star(d.fs, x, {0, 0}) == x);
  }
}

TEST_CASE("addition with carry in Z/p^2") {
  for (Element p : {3U, 5U, 7U}) {
    CAPTURE(p);
    const FiniteGroup z = cyclic_group(p * p);
    const Subgroup k = generated_subgroup(z, SubsetMask::from_elements(p * p, {p}));
    const Decomposition d = build_factor_system(z, k);
    for (Element g = 0; g < p * p; ++g) CHECK(d.psi.forward[g] == KernelCoset{g / p, g % p});
    for (Element b = 0; b < p; ++b)
      for (Element dd = 0; dd < p; ++dd) CHECK(d.fs.kernel_elements[d.fs.eta_at(b, dd)] == (b + dd < p ? 0 : p));
  }
  const FiniteGroup z25 = cyclic_group(25);
  const Decomposition d = build_factor_system(z25, generated_subgroup(z25, SubsetMask::from_elements(25, {5})));
  CHECK(star(d.fs, {0, 3}, {0, 4}) == KernelCoset{1, 2});
}

TEST_CASE("kernel equal to the whole group") {
  const FiniteGroup g = frobenius_group(7, 3, 2);
  const Decomposition d = build_factor_system(g, whole_group(g));
  CHECK(d.fs.quotient_order() == 1);
  for (Element x = 0; x < g.order(); ++x) CHECK(d.psi.forward[x] == KernelCoset{x, 0});
  CHECK(d.fs.eta == std::vector<Element>{0});
  CHECK(verify_isomorphism(d.fs, d.psi).ok);
}

TEST_CASE("psi is an isomorphism for every corpus pair and representative choice") {
  for (const auto& spec : oracle::corpus_specs()) {
    const FiniteGroup g = build_group(spec);
    for (const Subgroup& k : oracle::corpus_normal_subgroups(g)) {
      std::vector<RepPolicy> policies = {RepPolicy::lowest_index()};
      for (std::uint64_t s = 1; s <= 5; ++s) policies.push_back(RepPolicy::seeded_random(s));
      for (const auto& pol : policies) {
        CAPTURE(spec);
        CAPTURE(k.order());
        CAPTURE(pol.seed);
        const Decomposition d = build_factor_system(g, k, pol);
        CHECK(d.fs.reps[0] == 0);
        for (Element h = 0; h < d.fs.quotient_order(); ++h) {
          CHECK(d.fs.eta_at(0, h) == 0);
          CHECK(d.fs.eta_at(h, 0) == 0);
        }
        for (Element x = 0; x < g.order(); ++x) {
          const KernelCoset kc = d.psi.forward[x];
          CHECK(g.mul(d.fs.kernel_elements[kc.kernel], d.fs.reps[kc.coset]) == x);
          CHECK(d.psi.backward[d.fs.pair_index(kc)] == x);
        }
        CHECK(check_factor_system(d.fs).empty());
        const IsomorphismCheck iso = verify_isomorphism(d.fs, d.psi);
        CHECK(iso.ok);
      }
    }
  }
}

TEST_CASE("seeded representatives are deterministic and lie in their cosets") {
  const FiniteGroup g = heisenberg_group(3);
  const Subgroup k = commutator_subgroup(g);
  const Decomposition a = build_factor_system(g, k, RepPolicy::seeded_random(9));
  const Decomposition b = build_factor_system(g, k, RepPolicy::seeded_random(9));
  CHECK(a.fs.reps == b.fs.reps);
  CHECK(a.fs.eta == b.fs.eta);
  for (Element h = 0; h < a.fs.quotient_order(); ++h) {
    const auto& c = a.fs.cosets[h];
    CHECK(std::find(c.begin(), c.end(), a.fs.reps[h]) != c.end());
  }
  bool differs = false;
  for (std::uint64_t s = 1; s <= 5 && !differs; ++s)
    differs = build_factor_system(g, k, RepPolicy::seeded_random(s)).fs.reps != a.fs.reps;
  CHECK(differs);
}

TEST_CASE("corrupted eta is caught with a concrete counterexample") {
  Decomposition d = quaternion_reps_1_j();
  const Element old = d.fs.eta_at(1, 1);
  d.fs.eta_at(1, 1) = old == 0 ? 1 : 0;
  const IsomorphismCheck iso = verify_isomorphism(d.fs, d.psi);
  REQUIRE_FALSE(iso.ok);
  REQUIRE(iso.counterexample.has_value());
  const auto [g1, g2] = *iso.counterexample;
  const FiniteGroup q = quaternion_group();
  CHECK(d.psi.forward[q.mul(g1, g2)] != star(d.fs, d.psi.forward[g1], d.psi.forward[g2]));
  // trivial eta with the inversion action is still a factor system, of D4
  CHECK(check_factor_system(d.fs).empty());
  const FiniteGroup e = extension_from_factor_system(d.fs);
  std::size_t involutions = 0;
  for (Element x = 1; x < 8; ++x) involutions += e.element_order(x) == 2;
  CHECK(involutions == 5);
}

TEST_CASE("invalid inputs to build_factor_system") {
  const FiniteGroup d5 = dihedral_group(5);
  CHECK_THROWS_AS(build_factor_system(d5, generated_subgroup(d5, SubsetMask::from_elements(10, {5}))),
                  std::invalid_argument);
  const FiniteGroup q = quaternion_group();
  const Subgroup k = generated_subgroup(q, SubsetMask::from_elements(8, {kK}));
  CHECK_THROWS_AS(build_factor_system(q, k, RepPolicy::explicit_reps({kMinusOne, kJ})), std::invalid_argument);
  CHECK_THROWS_AS(build_factor_system(q, k, RepPolicy::explicit_reps({kOne, kK})), std::invalid_argument);
  CHECK_THROWS_AS(build_factor_system(q, k, RepPolicy::explicit_reps({kOne})), std::invalid_argument);
  CHECK_NOTHROW(build_factor_system(q, k, RepPolicy::explicit_reps({kMinusI, kOne})));
}

TEST_CASE("round trip through the extension") {
  for (const auto& spec : oracle::corpus_specs()) {
    const FiniteGroup g = build_group(spec);
    for (const Subgroup& k : oracle::corpus_normal_subgroups(g)) {
      CAPTURE(spec);
      CAPTURE(k.order());
      const Decomposition d = build_factor_system(g, k);
      const FiniteGroup e = extension_from_factor_system(d.fs);
      REQUIRE(e.order() == g.order());
      CHECK(validate_group(e).ok());
      for (Element x = 0; x < g.order(); ++x)
        for (Element y = 0; y < g.order(); ++y)
          CHECK(e.mul(d.fs.pair_index(d.psi.forward[x]), d.fs.pair_index(d.psi.forward[y])) ==
                d.fs.pair_index(d.psi.forward[g.mul(x, y)]));
    }
  }
}

TEST_CASE("hand-built factor systems") {
  SUBCASE("trivial data gives the direct product") {
    const FactorSystem fs =
        make_factor_system(cyclic_group(3), cyclic_group(3), {0, 1, 2, 0, 1, 2, 0, 1, 2}, std::vector<Element>(9, 0));
    CHECK(check_factor_system(fs).empty());
    CHECK(extension_from_factor_system(fs) == build_group("product:cyclic:3,cyclic:3"));
  }
  SUBCASE("carry cocycle gives Z/9") {
    std::vector<Element> eta(9, 0);
    for (Element b = 0; b < 3; ++b)
      for (Element d = 0; d < 3; ++d) eta[b * 3 + d] = b + d >= 3 ? 1 : 0;
    const FactorSystem fs = make_factor_system(cyclic_group(3), cyclic_group(3), {0, 1, 2, 0, 1, 2, 0, 1, 2}, eta);
    const FiniteGroup e = extension_from_factor_system(fs);
    CHECK(e.is_abelian());
    CHECK(minimal_torsion(e) == TorsionValue::finite(3));
    CHECK(e.element_order(fs.pair_index({0, 1})) == 9);
  }
  SUBCASE("a non-cocycle is rejected") {
    std::vector<Element> eta(9, 0);
    eta[1 * 3 + 1] = 1;
    const FactorSystem fs = make_factor_system(cyclic_group(3), cyclic_group(3), {0, 1, 2, 0, 1, 2, 0, 1, 2}, eta);
    CHECK_FALSE(check_factor_system(fs).empty());
    CHECK_THROWS_AS(extension_from_factor_system(fs), GroupError);
  }
  SUBCASE("phi rows must be automorphisms") {
    const FactorSystem fs =
        make_factor_system(cyclic_group(3), cyclic_group(2), {0, 1, 2, 0, 1, 1}, std::vector<Element>(4, 0));
    CHECK_FALSE(check_factor_system(fs).empty());
  }
}

TEST_CASE("decompose_subset") {
  SUBCASE("whole group") {
    const FiniteGroup g = heisenberg_group(3);
    const Decomposition d = build_factor_system(g, commutator_subgroup(g));
    const SubsetDecomposition s = decompose_subset(d.fs, d.psi, SubsetMask::full(27));
    CHECK(s.second.count() == 9);
    CHECK(s.first.count() == 3);
    for (const auto& b : s.blocks) CHECK(b.size == 3);
  }
  SUBCASE("quaternion {i, -i, 1}") {
    const Decomposition d = quaternion_reps_1_j();
    const SubsetDecomposition s = decompose_subset(d.fs, d.psi, SubsetMask::from_elements(8, {kI, kMinusI, kOne}));
    std::vector<Element> s1;
    s.first.for_each([&](Element k) { s1.push_back(d.fs.kernel_elements[k]); });
    CHECK(s1 == std::vector<Element>{kOne, kK, kMinusK});
    CHECK(s.second.elements() == std::vector<Element>{0, 1});
    REQUIRE(s.blocks.size() == 2);
    CHECK(s.blocks[0].coset == 1);
    CHECK(s.blocks[0].size == 2);
    CHECK(s.blocks[1].size == 1);
  }
  SUBCASE("{0,1,2,5} in Z/25") {
    const FiniteGroup z = cyclic_group(25);
    const Decomposition d = build_factor_system(z, generated_subgroup(z, SubsetMask::from_elements(25, {5})));
    const SubsetDecomposition s = decompose_subset(d.fs, d.psi, SubsetMask::from_elements(25, {0, 1, 2, 5}));
    CHECK(s.second.elements() == std::vector<Element>{0, 1, 2});
    REQUIRE(s.blocks.size() == 3);
    CHECK(s.blocks[0].coset == 0);
    CHECK(s.blocks[0].kernel_part.elements() == std::vector<Element>{0, 1});
    CHECK(s.blocks[0].size == 2);
    CHECK(s.blocks[1].coset == 1);
    CHECK(s.blocks[2].coset == 2);
    CHECK(s.blocks[1].size == 1);
  }
  SUBCASE("invariants on random subsets") {
    std::mt19937_64 rng(5);
    for (const auto& spec : oracle::corpus_specs()) {
      const FiniteGroup g = build_group(spec);
      const Decomposition d = build_factor_system(g, oracle::corpus_normal_subgroups(g).back());
      for (int t = 0; t < 10; ++t) {
        const SubsetMask s = oracle::random_mask(g.order(), rng, false);
        const SubsetDecomposition sd = decompose_subset(d.fs, d.psi, s);
        std::size_t total = 0;
        SubsetMask first(d.fs.kernel_order());
        for (std::size_t i = 0; i < sd.blocks.size(); ++i) {
          total += sd.blocks[i].size;
          CHECK(sd.blocks[i].size == sd.blocks[i].kernel_part.count());
          CHECK(sd.blocks[i].size > 0);
          first |= sd.blocks[i].kernel_part;
          if (i > 0) {
            CHECK(sd.blocks[i - 1].size >= sd.blocks[i].size);
            if (sd.blocks[i - 1].size == sd.blocks[i].size) CHECK(sd.blocks[i - 1].coset < sd.blocks[i].coset);
          }
        }
        CHECK(total == s.count());
        CHECK(sd.second.count() <= s.count());
        CHECK(sd.second.count() == sd.blocks.size());
        CHECK(first == sd.first);
      }
    }
  }
}
