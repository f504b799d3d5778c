#pragma once

#include <cstdint>
#include <vector>

#include "cadi/dataset.hpp"

namespace cadi {

/// Ordered index triple with reference point i; the unordered pair is stored
/// with j < k. Constrained triplets satisfy class(j) = class(k) != class(i).
struct Triplet {
  std::uint32_t i;
  std::uint32_t j;
  std::uint32_t k;

  bool operator==(const Triplet&) const = default;
};

enum class BudgetMode { kMultiplier, kAbsolute, kExhaustive };

/// How many triplets to draw. Multiplier mode resolves k = ceil(mult * n);
/// defaults follow the reporting conventions: 40n for CADI, 100n for ADI,
/// 10n for embedding training.
struct TripletBudget {
  BudgetMode mode = BudgetMode::kMultiplier;
  double multiplier = 40.0;
  std::uint64_t absolute = 0;
  std::uint64_t seed = 0;

  static TripletBudget with_multiplier(double mult, std::uint64_t seed) {
    return {BudgetMode::kMultiplier, mult, 0, seed};
  }
  static TripletBudget with_count(std::uint64_t k, std::uint64_t seed) {
    return {BudgetMode::kAbsolute, 0.0, k, seed};
  }
  static TripletBudget exhaustive() {
    return {BudgetMode::kExhaustive, 0.0, 0, 0};
  }

  /// Resolves the draw count for an n-point input. Throws ValidationError in
  /// exhaustive mode (callers must branch to the exact path) or when the
  /// resolved count is zero.
  std::uint64_t resolve(std::size_t n) const;
};

inline constexpr double kDefaultCadiMultiplier = 40.0;
inline constexpr double kDefaultAdiMultiplier = 100.0;
inline constexpr double kDefaultTrainMultiplier = 10.0;

/// T = sum over ordered class pairs (a, b), a != b, of |C_a| * binom(|C_b|, 2).
std::uint64_t count_constrained_triplets(const Partition& p);

/// All valid constrained triplets exactly once, in (a, b, i, j, k)
/// lexicographic order. Throws EmptyTripletSpaceError when T = 0.
std::vector<Triplet> enumerate_constrained(const Partition& p);

/// k i.i.d. uniform draws (with replacement) over the constrained triplet
/// space. Two-stage scheme: class pair (a, b) with probability proportional
/// to |C_a| * binom(|C_b|, 2), then i uniform in C_a, then an unordered pair
/// uniform in C_b; the RNG stream is consumed in exactly that order.
std::vector<Triplet> sample_constrained(const Partition& p,
                                        const TripletBudget& budget);

/// k i.i.d. uniform draws over all (i, {j, k}) with pairwise-distinct
/// indices, ignoring any partition. Requires n >= 3.
std::vector<Triplet> sample_unconstrained(std::size_t n,
                                          const TripletBudget& budget);

}  // namespace cadi
