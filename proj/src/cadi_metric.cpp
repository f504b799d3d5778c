#include "cadi/cadi_metric.hpp"

#include <algorithm>
#include <cmath>

#include "cadi/geometry.hpp"
#include "cadi/threading.hpp"

namespace cadi {

namespace {

constexpr std::size_t kChunk = 8192;

double triplet_sq_diff(const Matrix& x, const Matrix& y, const Triplet& t) {
  const double cx = internal_cosine(x.row(t.i), x.row(t.j), x.row(t.k));
  const double cy = internal_cosine(y.row(t.i), y.row(t.j), y.row(t.k));
  const double d = cx - cy;
  return d * d;
}

// Per-pair (sum, count) tallies for one chunk of sampled triplets, stored
// densely over the m*m ordered-pair grid.
struct PairTally {
  std::vector<double> sums;
  std::vector<std::uint64_t> counts;
  explicit PairTally(std::size_t m) : sums(m * m, 0.0), counts(m * m, 0) {}
};

}  // namespace

double mean_sq_cosine_diff(const Matrix& x_points, const Matrix& y_points,
                           std::span<const Triplet> triplets) {
  if (triplets.empty()) {
    throw ValidationError("mean_sq_cosine_diff: empty triplet list");
  }
  if (x_points.rows != y_points.rows) {
    throw ValidationError("mean_sq_cosine_diff: row count mismatch");
  }
  const std::size_t n_chunks = (triplets.size() + kChunk - 1) / kChunk;
  std::vector<double> chunk_sums(n_chunks, 0.0);
  for_each_chunk(triplets.size(), kChunk,
                 [&](std::size_t c, std::size_t begin, std::size_t end) {
                   double s = 0.0;
                   for (std::size_t t = begin; t < end; ++t) {
                     s += triplet_sq_diff(x_points, y_points, triplets[t]);
                   }
                   chunk_sums[c] = s;
                 });
  return pairwise_sum(chunk_sums) / static_cast<double>(triplets.size());
}

ExactCadiResult cadi_exact(const Dataset& x, const Projection& y,
                           const Partition& c) {
  require_aligned(x, y);
  const std::uint64_t total = count_constrained_triplets(c);
  if (total == 0) {
    throw EmptyTripletSpaceError(
        "CADI is undefined: the partition admits no constrained triplets");
  }

  // Ordered (a, b) blocks in lexicographic order; each block is a breakdown
  // entry and an independent unit of work.
  struct Block {
    std::uint32_t a, b;
    std::uint64_t count;
  };
  std::vector<Block> blocks;
  const std::size_t m = c.num_classes();
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const std::uint64_t cnt =
          static_cast<std::uint64_t>(c.classes[a].size()) *
          (c.classes[b].size() * (c.classes[b].size() - 1) / 2);
      if (cnt > 0) blocks.push_back({a, b, cnt});
    }
  }

  std::vector<double> block_sums(blocks.size(), 0.0);
  for_each_chunk(blocks.size(), 1,
                 [&](std::size_t bi, std::size_t, std::size_t) {
    const Block& blk = blocks[bi];
    const auto& ca = c.classes[blk.a];
    const auto& cb = c.classes[blk.b];
    std::vector<double> partials;
    double acc = 0.0;
    std::size_t in_chunk = 0;
    for (std::uint32_t i : ca) {
      for (std::size_t jp = 0; jp + 1 < cb.size(); ++jp) {
        for (std::size_t kp = jp + 1; kp < cb.size(); ++kp) {
          acc += triplet_sq_diff(x.points, y.points, {i, cb[jp], cb[kp]});
          if (++in_chunk == kChunk) {
            partials.push_back(acc);
            acc = 0.0;
            in_chunk = 0;
          }
        }
      }
    }
    if (in_chunk > 0) partials.push_back(acc);
    block_sums[bi] = pairwise_sum(partials);
  });

  ExactCadiResult result;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    result.breakdown.entries[{blocks[bi].a, blocks[bi].b}] = {
        blocks[bi].count,
        block_sums[bi] / static_cast<double>(blocks[bi].count)};
  }
  result.score.value = pairwise_sum(block_sums) / static_cast<double>(total);
  result.score.triplet_count = total;
  result.score.sampled = false;
  return result;
}

CadiScore cadi_sampled(const Dataset& x, const Projection& y,
                       const Partition& c, const TripletBudget& budget,
                       ClassPairBreakdown* breakdown) {
  require_aligned(x, y);
  const auto triplets = sample_constrained(c, budget);
  const std::size_t m = c.num_classes();

  const std::size_t n_chunks = (triplets.size() + kChunk - 1) / kChunk;
  std::vector<PairTally> tallies(n_chunks, PairTally(m));
  for_each_chunk(triplets.size(), kChunk,
                 [&](std::size_t ci, std::size_t begin, std::size_t end) {
                   PairTally& tally = tallies[ci];
                   for (std::size_t t = begin; t < end; ++t) {
                     const Triplet& trip = triplets[t];
                     const std::size_t key =
                         static_cast<std::size_t>(c.class_of[trip.i]) * m +
                         c.class_of[trip.j];
                     tally.sums[key] +=
                         triplet_sq_diff(x.points, y.points, trip);
                     tally.counts[key] += 1;
                   }
                 });

  // Merge chunk tallies in chunk order, then reduce pair sums in (a, b)
  // order: the total is a pure function of the triplet list.
  std::vector<double> pair_sums(m * m, 0.0);
  std::vector<std::uint64_t> pair_counts(m * m, 0);
  for (const PairTally& tally : tallies) {
    for (std::size_t key = 0; key < pair_sums.size(); ++key) {
      pair_sums[key] += tally.sums[key];
      pair_counts[key] += tally.counts[key];
    }
  }
  std::vector<double> occupied;
  occupied.reserve(m * m);
  for (std::size_t key = 0; key < pair_sums.size(); ++key) {
    if (pair_counts[key] > 0) occupied.push_back(pair_sums[key]);
  }
  if (breakdown != nullptr) {
    breakdown->entries.clear();
    for (std::size_t key = 0; key < pair_sums.size(); ++key) {
      if (pair_counts[key] == 0) continue;
      const auto a = static_cast<std::uint32_t>(key / m);
      const auto b = static_cast<std::uint32_t>(key % m);
      breakdown->entries[{a, b}] = {
          pair_counts[key],
          pair_sums[key] / static_cast<double>(pair_counts[key])};
    }
  }

  CadiScore score;
  score.value = pairwise_sum(occupied) / static_cast<double>(triplets.size());
  score.triplet_count = triplets.size();
  score.sampled = true;
  score.seed = budget.seed;
  return score;
}

CadiScore adi_sampled(const Dataset& x, const Projection& y,
                      const TripletBudget& budget) {
  require_aligned(x, y);
  const auto triplets = sample_unconstrained(x.n(), budget);
  CadiScore score;
  score.value = mean_sq_cosine_diff(x.points, y.points, triplets);
  score.triplet_count = triplets.size();
  score.sampled = true;
  score.seed = budget.seed;
  return score;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

std::vector<StabilityRow> stability_study(const Dataset& x,
                                          const Projection& y,
                                          const Partition& c,
                                          std::span<const double> multipliers,
                                          int repetitions,
                                          std::uint64_t base_seed) {
  if (repetitions < 2) {
    throw ValidationError("stability study needs at least 2 repetitions");
  }
  std::vector<StabilityRow> rows;
  rows.reserve(multipliers.size());
  for (double mult : multipliers) {
    std::vector<double> values;
    values.reserve(repetitions);
    std::uint64_t k = 0;
    for (int r = 0; r < repetitions; ++r) {
      const auto budget = TripletBudget::with_multiplier(
          mult, base_seed + static_cast<std::uint64_t>(r));
      const CadiScore s = cadi_sampled(x, y, c, budget);
      values.push_back(s.value);
      k = s.triplet_count;
    }
    std::sort(values.begin(), values.end());
    StabilityRow row;
    row.multiplier = mult;
    row.k = k;
    row.min = values.front();
    row.q1 = quantile_sorted(values, 0.25);
    row.median = quantile_sorted(values, 0.5);
    row.q3 = quantile_sorted(values, 0.75);
    row.max = values.back();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    row.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cadi
