#include "quatcalc/random.hpp"

#include "quatcalc/error.hpp"

namespace quatcalc {

Quaternion random_quaternion(Rng& rng) {
  std::normal_distribution<double> g;
  const double w = g(rng), x = g(rng), y = g(rng), z = g(rng);
  return {w, x, y, z};
}

Quaternion random_unit_quaternion(Rng& rng) {
  for (;;) {
    const Quaternion q = random_quaternion(rng);
    const double n = q.norm();
    if (n > 1e-6) return q / n;
  }
}

ImaginaryUnit random_imaginary_unit(Rng& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    const double x = g(rng), y = g(rng), z = g(rng);
    if (x * x + y * y + z * z > 1e-12) return {x, y, z};
  }
}

QMatrix random_qmatrix(Rng& rng, std::size_t rows, std::size_t cols) {
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_quaternion(rng);
  return m;
}

QMatrix random_unitary(Rng& rng, std::size_t n) {
  for (;;) {
    const QMatrix g = random_qmatrix(rng, n, n);
    CMatrix cols(2 * static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c) cols.col(static_cast<Eigen::Index>(c)) = to_complex_column(g.column(c));
    QMatrix u = quaternionic_basis(cols, n, 1e-3);
    if (u.cols() == n) return u;
  }
}

QMatrix random_invertible(Rng& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Quaternion> sv(n);
  for (auto& s : sv) s = u(rng);
  const QMatrix a = random_unitary(rng, n);
  const QMatrix b = random_unitary(rng, n);
  return a * QMatrix::diagonal(sv) * b.adjoint();
}

QMatrix random_low_rank(Rng& rng, std::size_t n, std::size_t r) {
  return random_qmatrix(rng, n, r) * random_qmatrix(rng, r, n);
}

QMatrix random_normal(Rng& rng, std::span<const Sphere> spheres, std::span<const std::size_t> mult) {
  if (spheres.size() != mult.size()) throw ValidationError("one multiplicity per sphere is required");
  std::vector<Quaternion> d;
  for (std::size_t s = 0; s < spheres.size(); ++s)
    for (std::size_t k = 0; k < mult[s]; ++k) d.push_back(slice_embed(spheres[s]));
  const QMatrix u = random_unitary(rng, d.size());
  return u * QMatrix::diagonal(d) * u.adjoint();
}

}  // namespace quatcalc
