#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "cadi/errors.hpp"
#include "cadi/matrix.hpp"

namespace cadi {

/// Class assignment per point plus the per-class index sets. Immutable after
/// construction; safe for unrestricted concurrent reads.
struct Partition {
  std::vector<std::uint32_t> class_of;              // per point, dense ids
  std::vector<std::vector<std::uint32_t>> classes;  // sorted member lists

  std::size_t n() const { return class_of.size(); }
  std::size_t num_classes() const { return classes.size(); }
};

/// Labeled high-dimensional point cloud. Labels are dense class ids
/// 0..m-1 in first-appearance order; label_names keeps the original file
/// spelling per class so save/load round-trips byte-identically.
struct Dataset {
  Matrix points;
  std::vector<std::uint32_t> labels;
  std::vector<std::string> label_names;

  std::size_t n() const { return points.rows; }
  std::size_t dim() const { return points.cols; }
  std::size_t num_classes() const { return label_names.size(); }

  Partition partition() const;

  /// Enforces n >= 3, d >= 1, finite coordinates, label/row agreement and
  /// dense label ids. Throws ValidationError.
  void validate() const;
};

/// Low-dimensional point cloud aligned row-for-row with a Dataset. The
/// library accepts any t >= 1; the CLI restricts t to 2 or 3.
struct Projection {
  Matrix points;

  std::size_t n() const { return points.rows; }
  std::size_t dim() const { return points.cols; }

  void validate() const;
};

namespace detail {
Partition partition_from_dense(std::span<const std::uint32_t> dense,
                               std::size_t num_classes);
}

/// Builds a Partition from arbitrary integer labels, remapping them to dense
/// ids 0..m-1 in first-appearance order. Always constructible for non-empty
/// input (m = 1 partitions are valid here and rejected later by the CADI
/// precondition).
template <typename T>
  requires std::is_integral_v<T>
Partition partition_from_labels(std::span<const T> labels) {
  if (labels.empty()) {
    throw ValidationError("partition_from_labels: empty label vector");
  }
  std::vector<std::uint32_t> dense(labels.size());
  std::vector<T> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::uint32_t id = 0;
    for (; id < seen.size(); ++id) {
      if (seen[id] == labels[i]) break;
    }
    if (id == seen.size()) seen.push_back(labels[i]);
    dense[i] = id;
  }
  return detail::partition_from_dense(dense, seen.size());
}

/// Throws ValidationError unless the projection has exactly one row per
/// dataset point.
void require_aligned(const Dataset& ds, const Projection& proj);

/// The dataset's own coordinates viewed as a projection (t = d). Used for
/// identity-zero checks.
Projection identity_projection(const Dataset& ds);

}  // namespace cadi
