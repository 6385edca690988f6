#pragma once

#include <vector>

#include "quatcalc/qmatrix.hpp"
#include "quatcalc/random.hpp"

namespace testing {

using namespace quatcalc;

/// Textbook triple loop in quaternion arithmetic.
inline QMatrix naive_product(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      Quaternion s;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(r, k) * b(k, c);
      out(r, c) = s;
    }
  return out;
}

inline QMatrix inverse(const QMatrix& s) { return chi_inv_nearest(chi(s).inverse()); }

inline QMatrix diag(std::vector<Quaternion> d) { return QMatrix::diagonal(d); }

/// Normal matrix with spheres at the given (re, rad), multiplicity one.
inline QMatrix normal_with(Rng& rng, const std::vector<Sphere>& spheres) {
  const std::vector<std::size_t> mult(spheres.size(), 1);
  return random_normal(rng, spheres, mult);
}

inline Quaternion q(double w, double x = 0, double y = 0, double z = 0) { return {w, x, y, z}; }

}  // namespace testing
