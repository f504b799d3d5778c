#pragma once

#include <string>

#include "cadi/dataset.hpp"

namespace cadi {

/// Dataset CSV: header `f0,...,f{d-1},label`, one point per row, UTF-8,
/// `.` decimal separator, LF or CRLF. Labels may be arbitrary strings and
/// are remapped to dense ids in first-appearance order. Validates eagerly.
Dataset load_dataset(const std::string& path);

/// Writes the canonical dataset CSV. Coordinates are printed with 17
/// significant digits so save -> load is the identity.
void save_dataset(const Dataset& ds, const std::string& path);

/// Projection CSV: header `x,y[,z][,label]`; a label column is ignored if
/// present (dataset labels are authoritative).
Projection load_projection(const std::string& path);

/// Writes `x[,y[,z]]` columns. Supports t <= 3 (the file format defines no
/// further column names).
void save_projection(const Projection& proj, const std::string& path);

/// 17-significant-digit text form used in every file this library writes.
std::string format_double(double v);

}  // namespace cadi
