#include <bit>
#include <limits>

#include "sumsetlab/sumset.hpp"

namespace sumsetlab {

ProductEngine::ProductEngine(const FiniteGroup& g)
    : group_(&g), single_word_(g.order() <= SubsetMask::kWordBits), squares_(g.order()) {
  const std::size_t n = g.order();
  for (Element x = 0; x < n; ++x) squares_[x] = g.mul(x, x);
  if (!single_word_) return;
  chunk_count_ = (n + 7) / 8;
  chunks_.assign(n * chunk_count_ * 256, 0);
  for (Element x = 0; x < n; ++x) {
    std::uint64_t* row = chunks_.data() + static_cast<std::size_t>(x) * chunk_count_ * 256;
    for (std::size_t c = 0; c < chunk_count_; ++c) {
      std::uint64_t* table = row + c * 256;
      for (unsigned v = 1; v < 256; ++v) {
        const std::size_t bit = 8 * c + static_cast<std::size_t>(std::countr_zero(v));
        const std::uint64_t image = bit < n ? std::uint64_t{1} << g.mul(x, static_cast<Element>(bit)) : 0;
        table[v] = table[v & (v - 1)] | image;
      }
    }
  }
}

std::uint64_t ProductEngine::product_word(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t out = 0;
  while (a) {
    out |= translate_word(static_cast<Element>(std::countr_zero(a)), b);
    a &= a - 1;
  }
  return out;
}

std::uint64_t ProductEngine::restricted_product_word(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t out = 0;
  while (a) {
    const auto x = static_cast<Element>(std::countr_zero(a));
    std::uint64_t t = translate_word(x, b);
    if ((b >> x) & 1U) t &= ~(std::uint64_t{1} << squares_[x]);
    out |= t;
    a &= a - 1;
  }
  return out;
}

SubsetMask ProductEngine::translate(Element x, const SubsetMask& b) const {
  const std::size_t n = group_->order();
  if (single_word_) return SubsetMask::from_word(n, translate_word(x, b.low_word()));
  SubsetMask out(n);
  b.for_each([&](Element y) { out.set(group_->mul(x, y)); });
  return out;
}

SubsetMask ProductEngine::product(const SubsetMask& a, const SubsetMask& b) const {
  const std::size_t n = group_->order();
  if (single_word_) return SubsetMask::from_word(n, product_word(a.low_word(), b.low_word()));
  SubsetMask out(n);
  a.for_each([&](Element x) { out |= translate(x, b); });
  return out;
}

SubsetMask ProductEngine::restricted_product(const SubsetMask& a, const SubsetMask& b) const {
  const std::size_t n = group_->order();
  if (single_word_) return SubsetMask::from_word(n, restricted_product_word(a.low_word(), b.low_word()));
  SubsetMask out(n);
  a.for_each([&](Element x) {
    SubsetMask t = translate(x, b);
    if (b.test(x)) t.reset(squares_[x]);
    out |= t;
  });
  return out;
}

SubsetMask product_set(const FiniteGroup& g, const SubsetMask& a, const SubsetMask& b) {
  return ProductEngine(g).product(a, b);
}

SubsetMask restricted_product_set(const FiniteGroup& g, const SubsetMask& a, const SubsetMask& b) {
  return ProductEngine(g).restricted_product(a, b);
}

const char* theorem_name(Theorem t) { return t == Theorem::kCauchyDavenport ? "cd" : "eh"; }

std::int64_t bound_value(const TorsionValue& p, std::size_t size_a, std::size_t size_b, Theorem t) {
  const std::int64_t slack = t == Theorem::kCauchyDavenport ? 1 : 3;
  return p.min_with(static_cast<std::int64_t>(size_a + size_b) - slack);
}

BoundCheck cd_bound(const FiniteGroup& g, const SubsetMask& a, const SubsetMask& b, Theorem theorem) {
  if (theorem == Theorem::kCauchyDavenport && (a.empty() || b.empty()))
    throw std::invalid_argument("cd_bound: Cauchy-Davenport requires non-empty sets");
  const ProductEngine engine(g);
  const SubsetMask prod =
      theorem == Theorem::kCauchyDavenport ? engine.product(a, b) : engine.restricted_product(a, b);
  BoundCheck c;
  c.group_label = g.label();
  c.theorem = theorem;
  c.size_a = a.count();
  c.size_b = b.count();
  c.product_size = prod.count();
  c.p_g = minimal_torsion(g);
  c.bound = bound_value(c.p_g, c.size_a, c.size_b, theorem);
  c.holds = static_cast<std::int64_t>(c.product_size) >= c.bound;
  c.a = a;
  c.b = b;
  return c;
}

std::vector<SubsetMask> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<SubsetMask> out;
  if (k > n) return out;
  std::vector<Element> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<Element>(i);
  for (;;) {
    out.push_back(SubsetMask::from_elements(n, std::span<const Element>(c)));
    // Colex successor: bump the lowest position that can move up.
    std::size_t j = 0;
    while (j < k && c[j] + 1 == (j + 1 < k ? c[j + 1] : static_cast<Element>(n))) ++j;
    if (j == k) break;
    ++c[j];
    for (std::size_t i = 0; i < j; ++i) c[i] = static_cast<Element>(i);
  }
  return out;
}

ExtremalResult find_extremal(const FiniteGroup& g, const ExtremalSearch& search) {
  const std::size_t n = g.order();
  if (search.size_a < 1 || search.size_b < 1 || search.size_a > n || search.size_b > n)
    throw std::invalid_argument("find_extremal: sizes must lie in 1..|G|");
  auto binom = [](std::size_t nn, std::size_t k) {
    double r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(nn - i) / static_cast<double>(i + 1);
    return r;
  };
  if (binom(n, search.size_a) * binom(n, search.size_b) > static_cast<double>(search.max_pairs))
    throw SearchSpaceError("find_extremal: search space exceeds " + std::to_string(search.max_pairs) + " pairs");

  ExtremalResult result;
  result.bound = bound_value(minimal_torsion(g), search.size_a, search.size_b, Theorem::kCauchyDavenport);
  const auto as = subsets_of_size(n, search.size_a);
  const auto bs = subsets_of_size(n, search.size_b);
  const ProductEngine engine(g);
  for (const auto& a : as)
    for (const auto& b : bs) {
      ++result.pairs_searched;
      if (static_cast<std::int64_t>(engine.product(a, b).count()) != result.bound) continue;
      if (search.limit && result.pairs.size() >= *search.limit) {
        result.truncated = true;
        return result;
      }
      result.pairs.push_back({a, b});
    }
  return result;
}

}  // namespace sumsetlab
