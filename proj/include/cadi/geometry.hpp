#pragma once

#include <span>

#include "cadi/matrix.hpp"

namespace cadi {

/// Vector-norm threshold below which a triplet leg counts as degenerate and
/// the angle-0 convention fires (cos 0 = 1).
inline constexpr double kDegenerateNormEps = 1e-12;

/// Cosine of the internal angle at pi between the vectors (pj - pi) and
/// (pk - pi), clamped to [-1, 1]. If either vector has norm < eps the angle
/// is defined to be 0 and the cosine is 1, which keeps the metric stable on
/// overlapping points. Symmetric in pj and pk.
double internal_cosine(std::span<const double> pi, std::span<const double> pj,
                       std::span<const double> pk,
                       double eps = kDegenerateNormEps);

/// Maps every row x to scale * R * x + translation. R must be orthogonal
/// (RᵀR = I within 1e-10) and scale positive.
Matrix apply_similarity(const Matrix& points, const Matrix& rotation,
                        double scale, std::span<const double> translation);

}  // namespace cadi
