#include "cadi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cadi/errors.hpp"

namespace cadi {

double internal_cosine(std::span<const double> pi, std::span<const double> pj,
                       std::span<const double> pk, double eps) {
  const std::size_t d = pi.size();
  if (pj.size() != d || pk.size() != d) {
    throw ValidationError("internal_cosine: dimension mismatch");
  }
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    const double u = pj[c] - pi[c];
    const double v = pk[c] - pi[c];
    uu += u * u;
    vv += v * v;
    uv += u * v;
  }
  if (uu < eps * eps || vv < eps * eps) return 1.0;
  const double cosine = uv / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(cosine, -1.0, 1.0);
}

Matrix apply_similarity(const Matrix& points, const Matrix& rotation,
                        double scale, std::span<const double> translation) {
  const std::size_t d = points.cols;
  if (rotation.rows != d || rotation.cols != d) {
    throw ValidationError("apply_similarity: rotation must be " +
                          std::to_string(d) + "x" + std::to_string(d));
  }
  if (translation.size() != d) {
    throw ValidationError("apply_similarity: translation dimension mismatch");
  }
  if (!(scale > 0.0)) {
    throw ValidationError("apply_similarity: scale must be positive");
  }
  // RᵀR = I within 1e-10
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      double dot = 0.0;
      for (std::size_t r = 0; r < d; ++r) {
        dot += rotation.at(r, a) * rotation.at(r, b);
      }
      const double expect = (a == b) ? 1.0 : 0.0;
      if (std::abs(dot - expect) > 1e-10) {
        throw ValidationError("apply_similarity: matrix is not orthogonal");
      }
    }
  }

  Matrix out(points.rows, d);
  for (std::size_t r = 0; r < points.rows; ++r) {
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        acc += rotation.at(i, j) * points.at(r, j);
      }
      out.at(r, i) = scale * acc + translation[i];
    }
  }
  return out;
}

}  // namespace cadi
