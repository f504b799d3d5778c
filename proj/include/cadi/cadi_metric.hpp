#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cadi/dataset.hpp"
#include "cadi/sampling.hpp"

namespace cadi {

/// A CADI or ADI value. value = 0 iff every evaluated triplet has identical
/// cosines in both spaces.
struct CadiScore {
  double value = 0.0;
  std::uint64_t triplet_count = 0;  // T in exact mode, k in sampled mode
  bool sampled = false;
  std::uint64_t seed = 0;  // meaningful only when sampled
};

/// Per-class-pair decomposition: mean squared cosine difference and triplet
/// count for every ordered pair (a, b), a != b, that contributed. The
/// count-weighted mean of the entries equals the total score.
struct ClassPairStats {
  std::uint64_t count = 0;
  double mean_sq_diff = 0.0;
};
struct ClassPairBreakdown {
  std::map<std::pair<std::uint32_t, std::uint32_t>, ClassPairStats> entries;
};

/// Mean of (cos th_X - cos th_Y)^2 over an explicit triplet list. Used when
/// two configurations must be compared on a shared list (invariance checks).
double mean_sq_cosine_diff(const Matrix& x_points, const Matrix& y_points,
                           std::span<const Triplet> triplets);

struct ExactCadiResult {
  CadiScore score;
  ClassPairBreakdown breakdown;
};

/// Exact CADI: mean over the full enumerated constrained triplet space,
/// accumulated per (a, b) block with pairwise summation so the result is
/// independent of the worker count. O(T) work; T grows like n^3.
ExactCadiResult cadi_exact(const Dataset& x, const Projection& y,
                           const Partition& c);

/// Monte-Carlo CADI over sample_constrained draws. Per-pair tallies are kept
/// per fixed-size chunk and merged in chunk order, so the value is identical
/// for every worker count and whether or not the breakdown is requested.
CadiScore cadi_sampled(const Dataset& x, const Projection& y,
                       const Partition& c, const TripletBudget& budget,
                       ClassPairBreakdown* breakdown = nullptr);

/// Monte-Carlo ADI over unconstrained triplets (the partition is ignored).
CadiScore adi_sampled(const Dataset& x, const Projection& y,
                      const TripletBudget& budget);

/// One row of a sampling-stability table: score distribution over repeated
/// sampled runs at a fixed multiplier.
struct StabilityRow {
  double multiplier = 0.0;
  std::uint64_t k = 0;
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
  double stddev = 0.0;
};

/// For each multiplier, runs cadi_sampled `repetitions` times with seeds
/// base_seed .. base_seed + repetitions - 1 and reports the distribution.
/// Requires repetitions >= 2.
std::vector<StabilityRow> stability_study(const Dataset& x,
                                          const Projection& y,
                                          const Partition& c,
                                          std::span<const double> multipliers,
                                          int repetitions,
                                          std::uint64_t base_seed);

}  // namespace cadi
