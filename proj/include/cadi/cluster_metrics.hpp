#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cadi/dataset.hpp"

namespace cadi {

/// Mean silhouette coefficient over all points: (b - a) / max(a, b) with
/// a = mean intra-class distance (excluding self) and b = the smallest mean
/// distance to another class. Points in singleton classes contribute 0.
/// Range [-1, 1]; higher is better. Throws DegenerateInputError for a single
/// class or fewer than 2 points.
double silhouette(const Matrix& points, std::span<const std::uint32_t> labels);

/// Davies-Bouldin index. coincident_centroids flags the non-finite sentinel
/// produced when two class centroids coincide exactly; value is +infinity in
/// that case. Lower is better.
struct DbiResult {
  double value = 0.0;
  bool coincident_centroids = false;
};
DbiResult davies_bouldin(const Matrix& points,
                         std::span<const std::uint32_t> labels);

/// Scale-invariant cluster distance score: normalized stress over the
/// binom(m, 2) centroid distances, minimized over a uniform scale applied to
/// the low-dimensional distances. 0 = centroid geometry preserved exactly;
/// lower is better. Degenerate (flagged, value 0) when m < 3.
struct CdsResult {
  double value = 0.0;
  bool degenerate = false;
  double fitted_scale = 0.0;
};
CdsResult cluster_distance_score(const Dataset& x, const Projection& y,
                                 const Partition& c);

/// Normalized mutual information with the arithmetic-mean normalization
/// I(A;B) / ((H(A) + H(B)) / 2), natural logs. Returns 1 when both labelings
/// are constant, 0 when the mutual information vanishes. Range [0, 1].
double nmi(std::span<const std::uint32_t> labels_a,
           std::span<const std::uint32_t> labels_b);

/// Adjusted Rand index via the pair-counting contingency formulation.
/// Returns 1 when the correction denominator vanishes (both partitions
/// trivial in the same way). Range [-0.5, 1].
double ari(std::span<const std::uint32_t> labels_a,
           std::span<const std::uint32_t> labels_b);

/// Spearman rank correlation: Pearson correlation of average ranks (ties get
/// the mean of their rank range). defined = false when either series is
/// constant (the correlation is then undefined).
struct SpearmanResult {
  double value = 0.0;
  bool defined = true;
};
SpearmanResult spearman(std::span<const double> xs,
                        std::span<const double> ys);

}  // namespace cadi
