#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "quatcalc/qmatrix.hpp"

namespace quatcalc {

/// Seeded generator for reproducible test matrices.
using Rng = std::mt19937_64;

/// Components i.i.d. standard normal.
Quaternion random_quaternion(Rng& rng);
/// Uniform on the unit 3-sphere of H.
Quaternion random_unit_quaternion(Rng& rng);
ImaginaryUnit random_imaginary_unit(Rng& rng);

QMatrix random_qmatrix(Rng& rng, std::size_t rows, std::size_t cols);
/// Haar-like unitary from quaternionic Gram-Schmidt of a Gaussian matrix.
QMatrix random_unitary(Rng& rng, std::size_t n);
/// U diag(sv) V* with singular values drawn from [lo, hi].
QMatrix random_invertible(Rng& rng, std::size_t n, double lo = 0.5, double hi = 2.0);
/// Product of Gaussian n x r and r x n factors (quaternionic rank r).
QMatrix random_low_rank(Rng& rng, std::size_t n, std::size_t r);
/// U diag(re + i rad) U* for the given spheres, each repeated mult times.
QMatrix random_normal(Rng& rng, std::span<const Sphere> spheres, std::span<const std::size_t> mult);

}  // namespace quatcalc
