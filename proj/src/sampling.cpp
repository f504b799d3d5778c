#include "cadi/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cadi/rng.hpp"

namespace cadi {

namespace {

std::uint64_t pairs_of(std::uint64_t s) { return s * (s - 1) / 2; }

// Number of pairs (p', q') with p' < p in the lexicographic pair order
// over s elements.
std::uint64_t pair_rank_base(std::uint64_t p, std::uint64_t s) {
  return p * (2 * s - p - 1) / 2;
}

// Inverse of the lexicographic pair ranking: rank in [0, binom(s,2)) to
// (p, q) with p < q. O(1) via the closed form plus an integer fix-up.
std::pair<std::uint32_t, std::uint32_t> unrank_pair(std::uint64_t rank,
                                                    std::uint64_t s) {
  const double sd = static_cast<double>(2 * s - 1);
  double disc = sd * sd - 8.0 * static_cast<double>(rank);
  if (disc < 0) disc = 0;
  auto p = static_cast<std::uint64_t>(
      std::max(0.0, std::floor((sd - std::sqrt(disc)) / 2.0)));
  if (p > s - 2) p = s - 2;
  while (p > 0 && pair_rank_base(p, s) > rank) --p;
  while (pair_rank_base(p + 1, s) <= rank) ++p;
  const std::uint64_t q = p + 1 + (rank - pair_rank_base(p, s));
  return {static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q)};
}

struct PairBucket {
  std::uint32_t a, b;
  std::uint64_t weight;      // |C_a| * binom(|C_b|, 2)
  std::uint64_t cumulative;  // inclusive upper bound of this bucket
};

std::vector<PairBucket> build_buckets(const Partition& p) {
  std::vector<PairBucket> buckets;
  std::uint64_t cum = 0;
  const std::size_t m = p.num_classes();
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const std::uint64_t w =
          static_cast<std::uint64_t>(p.classes[a].size()) *
          pairs_of(p.classes[b].size());
      if (w == 0) continue;
      cum += w;
      buckets.push_back({a, b, w, cum});
    }
  }
  return buckets;
}

}  // namespace

std::uint64_t TripletBudget::resolve(std::size_t n) const {
  std::uint64_t k = 0;
  switch (mode) {
    case BudgetMode::kMultiplier:
      if (multiplier < 0) {
        throw ValidationError("triplet budget: negative multiplier");
      }
      k = static_cast<std::uint64_t>(
          std::ceil(multiplier * static_cast<double>(n)));
      break;
    case BudgetMode::kAbsolute:
      k = absolute;
      break;
    case BudgetMode::kExhaustive:
      throw ValidationError(
          "triplet budget: exhaustive mode has no sample count");
  }
  if (k < 1) {
    throw ValidationError("triplet budget: resolved sample count is zero");
  }
  return k;
}

std::uint64_t count_constrained_triplets(const Partition& p) {
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < p.num_classes(); ++a) {
    for (std::size_t b = 0; b < p.num_classes(); ++b) {
      if (a == b) continue;
      total += static_cast<std::uint64_t>(p.classes[a].size()) *
               pairs_of(p.classes[b].size());
    }
  }
  return total;
}

std::vector<Triplet> enumerate_constrained(const Partition& p) {
  const std::uint64_t total = count_constrained_triplets(p);
  if (total == 0) {
    throw EmptyTripletSpaceError(
        "no constrained triplets: need at least two classes and a class of "
        "size >= 2 outside the reference class");
  }
  std::vector<Triplet> out;
  out.reserve(total);
  const std::size_t m = p.num_classes();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const auto& ca = p.classes[a];
      const auto& cb = p.classes[b];
      if (ca.empty() || cb.size() < 2) continue;
      for (std::uint32_t i : ca) {
        for (std::size_t jp = 0; jp + 1 < cb.size(); ++jp) {
          for (std::size_t kp = jp + 1; kp < cb.size(); ++kp) {
            out.push_back({i, cb[jp], cb[kp]});
          }
        }
      }
    }
  }
  return out;
}

std::vector<Triplet> sample_constrained(const Partition& p,
                                        const TripletBudget& budget) {
  const auto buckets = build_buckets(p);
  if (buckets.empty()) {
    throw EmptyTripletSpaceError(
        "no constrained triplets: need at least two classes and a class of "
        "size >= 2 outside the reference class");
  }
  const std::uint64_t total = buckets.back().cumulative;
  const std::uint64_t k = budget.resolve(p.n());

  SplitMix64 rng(budget.seed);
  std::vector<Triplet> out;
  out.reserve(k);
  for (std::uint64_t draw = 0; draw < k; ++draw) {
    // 1) class pair proportional to its triplet count
    const std::uint64_t r = rng.next_below(total);
    const auto it = std::upper_bound(
        buckets.begin(), buckets.end(), r,
        [](std::uint64_t v, const PairBucket& bk) { return v < bk.cumulative; });
    const PairBucket& bucket = *it;
    const auto& ca = p.classes[bucket.a];
    const auto& cb = p.classes[bucket.b];
    // 2) reference point uniform in C_a
    const std::uint32_t i = ca[rng.next_below(ca.size())];
    // 3) unordered pair uniform in C_b
    const auto [jp, kp] = unrank_pair(rng.next_below(pairs_of(cb.size())),
                                      cb.size());
    out.push_back({i, cb[jp], cb[kp]});
  }
  return out;
}

std::vector<Triplet> sample_unconstrained(std::size_t n,
                                          const TripletBudget& budget) {
  if (n < 3) {
    throw ValidationError("unconstrained sampling needs n >= 3, got n = " +
                          std::to_string(n));
  }
  const std::uint64_t k = budget.resolve(n);
  const std::uint64_t pair_space = pairs_of(n - 1);

  SplitMix64 rng(budget.seed);
  std::vector<Triplet> out;
  out.reserve(k);
  for (std::uint64_t draw = 0; draw < k; ++draw) {
    const auto i = static_cast<std::uint32_t>(rng.next_below(n));
    auto [jp, kp] = unrank_pair(rng.next_below(pair_space), n - 1);
    // map positions over {0..n-1} \ {i} back to point indices
    const std::uint32_t j = jp < i ? jp : jp + 1;
    const std::uint32_t kk = kp < i ? kp : kp + 1;
    out.push_back({i, j, kk});
  }
  return out;
}

}  // namespace cadi
