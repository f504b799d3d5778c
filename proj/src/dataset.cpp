#include "cadi/dataset.hpp"

#include <algorithm>
#include <string>

namespace cadi {

namespace detail {

Partition partition_from_dense(std::span<const std::uint32_t> dense,
                               std::size_t num_classes) {
  Partition p;
  p.class_of.assign(dense.begin(), dense.end());
  p.classes.resize(num_classes);
  for (std::size_t i = 0; i < dense.size(); ++i) {
    p.classes[dense[i]].push_back(static_cast<std::uint32_t>(i));
  }
  return p;  // member lists are sorted by construction (ascending i)
}

}  // namespace detail

Partition Dataset::partition() const {
  return detail::partition_from_dense(labels, num_classes());
}

void Dataset::validate() const {
  if (points.rows < 3) {
    throw ValidationError("dataset: need at least 3 points, got " +
                          std::to_string(points.rows));
  }
  if (points.cols < 1) {
    throw ValidationError("dataset: need at least 1 dimension");
  }
  if (!points.all_finite()) {
    throw ValidationError("dataset: non-finite coordinate");
  }
  if (labels.size() != points.rows) {
    throw ValidationError("dataset: label count " +
                          std::to_string(labels.size()) +
                          " does not match row count " +
                          std::to_string(points.rows));
  }
  const std::size_t m = label_names.size();
  std::vector<bool> used(m, false);
  for (std::uint32_t l : labels) {
    if (l >= m) throw ValidationError("dataset: label id out of range");
    used[l] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw ValidationError("dataset: label ids are not dense");
  }
}

void Projection::validate() const {
  if (points.cols < 1) {
    throw ValidationError("projection: need at least 1 dimension");
  }
  if (!points.all_finite()) {
    throw ValidationError("projection: non-finite coordinate");
  }
}

void require_aligned(const Dataset& ds, const Projection& proj) {
  if (ds.n() != proj.n()) {
    throw ValidationError(
        "projection has " + std::to_string(proj.n()) +
        " rows but dataset has " + std::to_string(ds.n()));
  }
}

Projection identity_projection(const Dataset& ds) {
  return Projection{ds.points};
}

}  // namespace cadi
