#include "cadi/cluster_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace cadi {

namespace {

std::size_t num_classes_of(std::span<const std::uint32_t> labels) {
  std::uint32_t max_id = 0;
  for (std::uint32_t l : labels) max_id = std::max(max_id, l);
  return labels.empty() ? 0 : static_cast<std::size_t>(max_id) + 1;
}

std::vector<std::size_t> class_sizes(std::span<const std::uint32_t> labels,
                                     std::size_t m) {
  std::vector<std::size_t> sizes(m, 0);
  for (std::uint32_t l : labels) sizes[l] += 1;
  return sizes;
}

Matrix class_centroids(const Matrix& points,
                       std::span<const std::uint32_t> labels, std::size_t m) {
  Matrix centroids(m, points.cols, 0.0);
  std::vector<std::size_t> counts(m, 0);
  for (std::size_t r = 0; r < points.rows; ++r) {
    counts[labels[r]] += 1;
    for (std::size_t c = 0; c < points.cols; ++c) {
      centroids.at(labels[r], c) += points.at(r, c);
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (counts[k] == 0) continue;
    for (std::size_t c = 0; c < points.cols; ++c) {
      centroids.at(k, c) /= static_cast<double>(counts[k]);
    }
  }
  return centroids;
}

}  // namespace

double silhouette(const Matrix& points,
                  std::span<const std::uint32_t> labels) {
  const std::size_t n = points.rows;
  if (labels.size() != n) {
    throw ValidationError("silhouette: label count mismatch");
  }
  if (n < 2) {
    throw DegenerateInputError("silhouette needs at least 2 points");
  }
  const std::size_t m = num_classes_of(labels);
  if (m < 2) {
    throw DegenerateInputError("silhouette needs at least 2 classes");
  }
  const auto sizes = class_sizes(labels, m);

  double total = 0.0;
  std::vector<double> dist_to_class(m);
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[labels[i]] < 2) continue;  // singleton contributes 0
    std::fill(dist_to_class.begin(), dist_to_class.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      dist_to_class[labels[j]] +=
          euclidean_distance(points.row(i), points.row(j));
    }
    const double a = dist_to_class[labels[i]] /
                     static_cast<double>(sizes[labels[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
      if (k == labels[i] || sizes[k] == 0) continue;
      b = std::min(b, dist_to_class[k] / static_cast<double>(sizes[k]));
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

DbiResult davies_bouldin(const Matrix& points,
                         std::span<const std::uint32_t> labels) {
  const std::size_t n = points.rows;
  if (labels.size() != n) {
    throw ValidationError("davies_bouldin: label count mismatch");
  }
  const std::size_t m = num_classes_of(labels);
  if (m < 2) {
    throw DegenerateInputError("davies_bouldin needs at least 2 classes");
  }
  const auto sizes = class_sizes(labels, m);
  const Matrix centroids = class_centroids(points, labels, m);

  // mean distance of members to their own centroid
  std::vector<double> scatter(m, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    scatter[labels[r]] +=
        euclidean_distance(points.row(r), centroids.row(labels[r]));
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (sizes[k] > 0) scatter[k] /= static_cast<double>(sizes[k]);
  }

  DbiResult result;
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double d =
          euclidean_distance(centroids.row(i), centroids.row(j));
      if (d == 0.0) {
        result.coincident_centroids = true;
        worst = std::numeric_limits<double>::infinity();
        break;
      }
      worst = std::max(worst, (scatter[i] + scatter[j]) / d);
    }
    total += worst;
  }
  result.value = total / static_cast<double>(m);
  return result;
}

CdsResult cluster_distance_score(const Dataset& x, const Projection& y,
                                 const Partition& c) {
  require_aligned(x, y);
  const std::size_t m = c.num_classes();
  if (m < 3) return {0.0, true, 0.0};  // degenerate below 3 clusters

  const Matrix ch = class_centroids(x.points, c.class_of, m);
  const Matrix cl = class_centroids(y.points, c.class_of, m);

  double hh = 0.0, ll = 0.0, hl = 0.0;
  std::vector<double> dh, dl;
  dh.reserve(m * (m - 1) / 2);
  dl.reserve(m * (m - 1) / 2);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const double h = euclidean_distance(ch.row(a), ch.row(b));
      const double l = euclidean_distance(cl.row(a), cl.row(b));
      dh.push_back(h);
      dl.push_back(l);
      hh += h * h;
      ll += l * l;
      hl += h * l;
    }
  }
  CdsResult result;
  result.fitted_scale = (ll > 0.0) ? hl / ll : 0.0;
  if (hh == 0.0) return result;  // all high-D centroids coincide
  double stress = 0.0;
  for (std::size_t p = 0; p < dh.size(); ++p) {
    const double e = dh[p] - result.fitted_scale * dl[p];
    stress += e * e;
  }
  result.value = stress / hh;
  return result;
}

namespace {

struct Contingency {
  std::vector<std::uint64_t> counts;  // m_a * m_b
  std::vector<std::uint64_t> row_sums, col_sums;
  std::size_t ma = 0, mb = 0, n = 0;
};

Contingency contingency_table(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) {
    throw ValidationError("labelings have different lengths");
  }
  Contingency t;
  t.n = a.size();
  t.ma = num_classes_of(a);
  t.mb = num_classes_of(b);
  t.counts.assign(t.ma * t.mb, 0);
  t.row_sums.assign(t.ma, 0);
  t.col_sums.assign(t.mb, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    t.counts[a[i] * t.mb + b[i]] += 1;
    t.row_sums[a[i]] += 1;
    t.col_sums[b[i]] += 1;
  }
  return t;
}

double entropy(const std::vector<std::uint64_t>& sums, std::size_t n) {
  double h = 0.0;
  for (std::uint64_t s : sums) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double nmi(std::span<const std::uint32_t> labels_a,
           std::span<const std::uint32_t> labels_b) {
  if (labels_a.empty()) throw ValidationError("nmi: empty labelings");
  const Contingency t = contingency_table(labels_a, labels_b);
  const double ha = entropy(t.row_sums, t.n);
  const double hb = entropy(t.col_sums, t.n);
  if (ha == 0.0 && hb == 0.0) return 1.0;  // both constant

  double info = 0.0;
  const auto dn = static_cast<double>(t.n);
  for (std::size_t i = 0; i < t.ma; ++i) {
    for (std::size_t j = 0; j < t.mb; ++j) {
      const std::uint64_t nij = t.counts[i * t.mb + j];
      if (nij == 0) continue;
      const double pij = static_cast<double>(nij) / dn;
      const double pi = static_cast<double>(t.row_sums[i]) / dn;
      const double pj = static_cast<double>(t.col_sums[j]) / dn;
      info += pij * std::log(pij / (pi * pj));
    }
  }
  const double value = info / ((ha + hb) / 2.0);
  return std::clamp(value, 0.0, 1.0);
}

double ari(std::span<const std::uint32_t> labels_a,
           std::span<const std::uint32_t> labels_b) {
  if (labels_a.size() < 2) {
    throw ValidationError("ari: need at least 2 points");
  }
  const Contingency t = contingency_table(labels_a, labels_b);
  const auto comb2 = [](std::uint64_t v) -> long double {
    if (v < 2) return 0.0L;
    return static_cast<long double>(v) * static_cast<long double>(v - 1) / 2.0L;
  };
  long double index = 0.0L;
  for (std::uint64_t nij : t.counts) index += comb2(nij);
  long double sum_a = 0.0L, sum_b = 0.0L;
  for (std::uint64_t s : t.row_sums) sum_a += comb2(s);
  for (std::uint64_t s : t.col_sums) sum_b += comb2(s);
  const long double total_pairs = comb2(t.n);
  const long double expected = sum_a * sum_b / total_pairs;
  const long double max_index = (sum_a + sum_b) / 2.0L;
  if (max_index == expected) return 1.0;  // both partitions trivially equal
  return static_cast<double>((index - expected) / (max_index - expected));
}

namespace {

std::vector<double> average_ranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n);
  std::size_t pos = 0;
  while (pos < n) {
    std::size_t end = pos + 1;
    while (end < n && xs[order[end]] == xs[order[pos]]) ++end;
    const double mean_rank =
        (static_cast<double>(pos) + static_cast<double>(end - 1)) / 2.0 + 1.0;
    for (std::size_t q = pos; q < end; ++q) ranks[order[q]] = mean_rank;
    pos = end;
  }
  return ranks;
}

}  // namespace

SpearmanResult spearman(std::span<const double> xs,
                        std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw ValidationError("spearman: series length mismatch");
  }
  if (xs.size() < 2) {
    throw ValidationError("spearman: need at least 2 observations");
  }
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    return {std::numeric_limits<double>::quiet_NaN(), false};
  }
  return {sxy / std::sqrt(sxx * syy), true};
}

}  // namespace cadi
