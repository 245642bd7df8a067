#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "sumsetlab/sumset.hpp"

namespace sumsetlab {

const char* mode_name(VerifyMode m) {
  switch (m) {
    case VerifyMode::kExhaustive: return "exhaustive";
    case VerifyMode::kSizeCapped: return "size_capped";
    case VerifyMode::kSampled: return "sampled";
  }
  return "unknown";
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

/// Per-chunk accumulator; chunks are merged in index order.
struct Tally {
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  std::uint64_t extremal = 0;
  std::vector<BoundCheck> violation_list;
  std::vector<BoundCheck> extremal_list;
};

struct PairContext {
  const FiniteGroup& g;
  Theorem theorem;
  TorsionValue p;
  const RunOptions& opts;

  void record(Tally& t, std::size_t size_a, std::size_t size_b, std::size_t product_size, std::int64_t bound,
              const auto& make_a, const auto& make_b) const {
    ++t.pairs;
    const auto got = static_cast<std::int64_t>(product_size);
    const bool holds = got >= bound;
    const bool extremal = got == bound;
    if (holds && !extremal) return;
    auto make_check = [&] {
      return BoundCheck{g.label(), theorem, size_a, size_b, product_size, p, bound, holds, make_a(), make_b()};
    };
    if (!holds) {
      ++t.violations;
      if (t.violation_list.size() < opts.max_recorded_violations) t.violation_list.push_back(make_check());
    }
    if (extremal) {
      ++t.extremal;
      if (t.extremal_list.size() < opts.max_recorded_extremal) t.extremal_list.push_back(make_check());
    }
  }
};

unsigned resolve_workers(const RunOptions& opts) {
  if (opts.workers > 0) return opts.workers;
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs body(index, tally) for index in [0, count) split into contiguous
/// chunks, and merges the chunk tallies in index order.
template <class Body>
Tally parallel_tally(std::size_t count, std::size_t chunk_size, const RunOptions& opts, Body&& body) {
  const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
  std::vector<Tally> tallies(chunks);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c; (c = next.fetch_add(1)) < chunks;) {
      const std::size_t end = std::min(count, (c + 1) * chunk_size);
      for (std::size_t i = c * chunk_size; i < end; ++i) body(i, tallies[c]);
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(opts), std::max<std::size_t>(chunks, 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  Tally total;
  for (auto& t : tallies) {
    total.pairs += t.pairs;
    total.violations += t.violations;
    total.extremal += t.extremal;
    for (auto& v : t.violation_list)
      if (total.violation_list.size() < opts.max_recorded_violations) total.violation_list.push_back(std::move(v));
    for (auto& e : t.extremal_list)
      if (total.extremal_list.size() < opts.max_recorded_extremal) total.extremal_list.push_back(std::move(e));
  }
  return total;
}

VerificationReport make_report(const FiniteGroup& g, Theorem theorem, VerifyMode mode, Tally&& t,
                               std::chrono::steady_clock::time_point start) {
  VerificationReport r;
  r.group_label = g.label();
  r.group_order = g.order();
  r.p_g = minimal_torsion(g);
  r.mode = mode;
  r.theorem = theorem;
  r.pairs_checked = t.pairs;
  r.violation_count = t.violations;
  r.violations = std::move(t.violation_list);
  r.extremal_count = t.extremal;
  r.extremal_witnesses = std::move(t.extremal_list);
  r.wall_time = std::chrono::steady_clock::now() - start;
  return r;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return r;
}

struct Candidates {
  std::vector<SubsetMask> masks;
  std::vector<std::uint64_t> words;  // single-word copies
  std::vector<std::size_t> sizes;
};

Candidates candidates_up_to(std::size_t n, std::size_t max_size, bool single_word) {
  Candidates c;
  if (max_size == n && n <= 20) {
    // Every nonempty subset, already in ascending order.
    const std::uint64_t total = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t w = 1; w <= total; ++w) {
      c.masks.push_back(SubsetMask::from_word(n, w));
      c.sizes.push_back(static_cast<std::size_t>(std::popcount(w)));
    }
  } else {
    for (std::size_t k = 1; k <= max_size; ++k)
      for (auto& m : subsets_of_size(n, k)) {
        c.sizes.push_back(k);
        c.masks.push_back(std::move(m));
      }
    std::vector<std::size_t> order(c.masks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return c.masks[x] < c.masks[y]; });
    Candidates sorted;
    for (std::size_t i : order) {
      sorted.masks.push_back(std::move(c.masks[i]));
      sorted.sizes.push_back(c.sizes[i]);
    }
    c = std::move(sorted);
  }
  if (single_word)
    for (const auto& m : c.masks) c.words.push_back(m.low_word());
  return c;
}

}  // namespace

VerificationReport verify_exhaustive(const FiniteGroup& g, Theorem theorem, const std::optional<SizeCaps>& caps,
                                     const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = g.order();
  if (!caps && n > opts.exhaustive_limit)
    throw SearchSpaceError("exhaustive verification of order " + std::to_string(n) + " exceeds the limit of " +
                           std::to_string(opts.exhaustive_limit) + "; use size caps or sampling");
  const std::size_t max_a = caps && caps->max_a_size ? std::min(*caps->max_a_size, n) : n;
  const std::size_t max_b = caps && caps->max_b_size ? std::min(*caps->max_b_size, n) : n;
  const std::size_t sum_cap = caps && caps->sum_cap ? *caps->sum_cap : 2 * n;

  double count_a = 0, count_b = 0;
  for (std::size_t k = 1; k <= max_a; ++k) count_a += binomial(n, k);
  for (std::size_t k = 1; k <= max_b; ++k) count_b += binomial(n, k);
  if (count_a * count_b > static_cast<double>(opts.max_pairs))
    throw SearchSpaceError("exhaustive search space exceeds " + std::to_string(opts.max_pairs) + " pairs");

  const ProductEngine engine(g);
  const bool fast = engine.single_word();
  const Candidates as = candidates_up_to(n, max_a, fast);
  const Candidates bs = max_b == max_a ? as : candidates_up_to(n, max_b, fast);
  const PairContext ctx{g, theorem, minimal_torsion(g), opts};
  const bool cd = theorem == Theorem::kCauchyDavenport;

  Tally t = parallel_tally(as.masks.size(), 16, opts, [&](std::size_t i, Tally& tally) {
    const std::size_t sa = as.sizes[i];
    for (std::size_t j = 0; j < bs.masks.size(); ++j) {
      const std::size_t sb = bs.sizes[j];
      if (sa + sb > sum_cap) continue;
      const std::int64_t bound = bound_value(ctx.p, sa, sb, theorem);
      std::size_t size;
      if (fast) {
        const std::uint64_t w = cd ? engine.product_word(as.words[i], bs.words[j])
                                   : engine.restricted_product_word(as.words[i], bs.words[j]);
        size = static_cast<std::size_t>(std::popcount(w));
      } else {
        size = (cd ? engine.product(as.masks[i], bs.masks[j]) : engine.restricted_product(as.masks[i], bs.masks[j]))
                   .count();
      }
      ctx.record(tally, sa, sb, size, bound, [&] { return as.masks[i]; }, [&] { return bs.masks[j]; });
    }
  });

  VerificationReport r =
      make_report(g, theorem, caps ? VerifyMode::kSizeCapped : VerifyMode::kExhaustive, std::move(t), start);
  r.caps = caps;
  return r;
}

namespace {

SubsetMask draw_uniform_nonempty(std::size_t n, std::mt19937_64& rng) {
  SubsetMask m(n);
  do {
    auto words = m.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      const std::size_t bits = std::min<std::size_t>(SubsetMask::kWordBits, n - w * SubsetMask::kWordBits);
      words[w] = rng() & SubsetMask::low_mask(bits);
    }
  } while (m.empty());
  return m;
}

SubsetMask draw_fixed_size(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<Element> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Element>(i);
  for (std::size_t j = 0; j < k; ++j) std::swap(perm[j], perm[j + rng() % (n - j)]);
  return SubsetMask::from_elements(n, std::span<const Element>(perm.data(), k));
}

}  // namespace

VerificationReport verify_sampled(const FiniteGroup& g, Theorem theorem, const SamplingPlan& plan,
                                  const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = g.order();
  if (plan.count < 1) throw std::invalid_argument("sampling plan: count must be at least 1");
  if (plan.distribution == SamplingPlan::Distribution::kFixedSizes &&
      (plan.size_a < 1 || plan.size_b < 1 || plan.size_a > n || plan.size_b > n))
    throw std::invalid_argument("sampling plan: fixed sizes must lie in 1..|G|");

  const ProductEngine engine(g);
  const PairContext ctx{g, theorem, minimal_torsion(g), opts};
  const bool cd = theorem == Theorem::kCauchyDavenport;
  Tally t = parallel_tally(static_cast<std::size_t>(plan.count), 1024, opts, [&](std::size_t i, Tally& tally) {
    std::mt19937_64 rng(mix_seed(plan.seed, i));
    SubsetMask a, b;
    if (plan.distribution == SamplingPlan::Distribution::kUniformNonempty) {
      a = draw_uniform_nonempty(n, rng);
      b = draw_uniform_nonempty(n, rng);
    } else {
      a = draw_fixed_size(n, plan.size_a, rng);
      b = draw_fixed_size(n, plan.size_b, rng);
    }
    const std::size_t sa = a.count(), sb = b.count();
    const std::size_t size = (cd ? engine.product(a, b) : engine.restricted_product(a, b)).count();
    ctx.record(tally, sa, sb, size, bound_value(ctx.p, sa, sb, theorem), [&] { return a; }, [&] { return b; });
  });

  VerificationReport r = make_report(g, theorem, VerifyMode::kSampled, std::move(t), start);
  r.plan = plan;
  return r;
}

}  // namespace sumsetlab
