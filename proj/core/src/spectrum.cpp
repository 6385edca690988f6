#include "quatcalc/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <limits>
#include <sstream>

#include "quatcalc/error.hpp"

namespace quatcalc {

namespace {

using cd = std::complex<double>;

std::vector<cd> chi_eigenvalues(const QMatrix& t) {
  if (t.rows() == 0) return {};
  Eigen::ComplexEigenSolver<CMatrix> es(chi(t), false);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double smallest_singular_value(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

SphericalSpectrum from_points(const std::vector<cd>& points, const QMatrix* t, double norm, double tol) {
  SphericalSpectrum out;
  out.norm = norm;
  out.tol = tol;
  for (const auto& c : cluster_spheres(points, tol * std::max(1.0, norm))) {
    out.spheres.push_back(c.sphere);
    out.multiplicities.push_back(c.count / 2);
    out.delta_sigma_min.push_back(t ? smallest_singular_value(chi(delta(*t, slice_embed(c.sphere)))) : 0.0);
  }
  return out;
}

}  // namespace

QMatrix delta(const QMatrix& t, const Quaternion& q) {
  if (!t.is_square()) throw ValidationError("operator must be square");
  return t * t - (2.0 * q.real()) * t + QMatrix::scalar(t.rows(), q.norm2());
}

SphericalSpectrum spherical_spectrum(const QMatrix& t, double tol) {
  if (!t.is_square()) throw ValidationError("operator must be square");
  if (!(tol > 0.0)) throw ValidationError("spectrum tolerance must be positive");
  return from_points(chi_eigenvalues(t), &t, op_norm(t), tol);
}

SphericalSpectrum complex_spectrum_spheres(const CMatrix& tp, double tol) {
  if (tp.rows() != tp.cols()) throw ValidationError("operator must be square");
  std::vector<cd> points;
  if (tp.rows() > 0) {
    Eigen::ComplexEigenSolver<CMatrix> es(tp, false);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      points.push_back(es.eigenvalues()(k));
      points.push_back(std::conj(es.eigenvalues()(k)));
    }
  }
  return from_points(points, nullptr, complex_norm(tp), tol);
}

JordanStructure jordan_structure(const QMatrix& t, const Sphere& sphere, std::size_t algebraic, double zero_tol,
                                 double clear_tol) {
  JordanStructure out;
  out.sphere = sphere;
  out.algebraic = algebraic;
  out.margin = std::numeric_limits<double>::infinity();
  const bool real = sphere.rad == 0.0;
  // chi doubles every block of a real sphere; a nonreal sphere contributes
  // its blocks once at lambda and once at conj(lambda).
  const std::size_t complex_alg = real ? 2 * algebraic : algebraic;

  const CMatrix a = chi(t) - cd{sphere.re, sphere.rad} * CMatrix::Identity(2 * t.rows(), 2 * t.rows());
  const double s = std::max(1.0, complex_norm(a));
  std::vector<std::size_t> nullity{0};
  CMatrix power = CMatrix::Identity(a.rows(), a.cols());
  double scale = 1.0;
  for (std::size_t k = 1; k <= complex_alg; ++k) {
    power = power * a;
    scale *= s;
    Eigen::BDCSVD<CMatrix> svd(power);
    const auto& sv = svd.singularValues();
    std::size_t zeros = 0;
    for (Eigen::Index r = 0; r < sv.size(); ++r) {
      const double lo = zero_tol * scale, hi = clear_tol * scale;
      if (sv(r) <= lo) {
        ++zeros;
        if (sv(r) > 0.0) out.margin = std::min(out.margin, lo / sv(r));
      } else if (sv(r) >= hi) {
        out.margin = std::min(out.margin, sv(r) / hi);
      } else {
        out.determinate = false;
        out.margin = std::min(out.margin, std::min(sv(r) / hi, lo / sv(r)));
        std::ostringstream msg;
        msg << "singular value " << sv(r) << " of (chi(T) - lambda)^" << k << " lies between the rank thresholds";
        out.note = msg.str();
      }
    }
    if (zeros == nullity.back()) break;
    nullity.push_back(zeros);
    if (zeros >= complex_alg) break;
  }

  if (nullity.back() != complex_alg) {
    out.determinate = false;
    if (out.note.empty()) out.note = "nullity of powers does not reach the algebraic multiplicity";
  }

  // at_least[k] = number of blocks of size >= k.
  std::vector<std::size_t> at_least;
  for (std::size_t k = 1; k < nullity.size(); ++k) at_least.push_back(nullity[k] - nullity[k - 1]);
  at_least.push_back(0);
  for (std::size_t k = at_least.size() - 1; k-- > 0;) {
    if (at_least[k] < at_least[k + 1]) {
      out.determinate = false;
      out.note = "nullity increments are not monotone";
      break;
    }
    std::size_t exact = at_least[k] - at_least[k + 1];
    if (real) {
      if (exact % 2 != 0) {
        out.determinate = false;
        out.note = "odd block count at a real sphere";
      }
      exact /= 2;
    }
    for (std::size_t b = 0; b < exact; ++b) out.block_sizes.push_back(k + 1);
  }
  std::sort(out.block_sizes.rbegin(), out.block_sizes.rend());
  return out;
}

std::vector<PointSpectrumEntry> point_spectrum(const QMatrix& t, double tol) {
  const SphericalSpectrum spec = spherical_spectrum(t, tol);
  std::vector<PointSpectrumEntry> out;
  const double s = std::max(1.0, spec.norm);
  for (std::size_t k = 0; k < spec.size(); ++k) {
    PointSpectrumEntry e;
    e.sphere = spec.spheres[k];
    e.multiplicity = spec.multiplicities[k];
    e.jordan = jordan_structure(t, e.sphere, e.multiplicity);
    e.eigen_dim = e.jordan.block_sizes.size();

    const CMatrix d = chi(delta(t, slice_embed(e.sphere)));
    Eigen::BDCSVD<CMatrix> svd(d);
    const auto& sv = svd.singularValues();
    std::size_t zeros = 0;
    for (Eigen::Index r = 0; r < sv.size(); ++r)
      if (sv(r) <= kRankZeroTol * s * s) ++zeros;
    e.kernel_dim = zeros / 2;

    std::size_t expected = 0;
    for (auto b : e.jordan.block_sizes) expected += std::min<std::size_t>(b, e.sphere.rad == 0.0 ? 2 : 1);
    if (e.jordan.determinate && expected != e.kernel_dim) {
      e.jordan.determinate = false;
      e.jordan.note = "kernel of Delta disagrees with the Jordan structure";
    }
    out.push_back(std::move(e));
  }
  return out;
}

SResolventSample s_resolvent(const QMatrix& t, const Quaternion& s, double guard) {
  return s_resolvent(t, spherical_spectrum(t), s, guard);
}

SResolventSample s_resolvent(const QMatrix& t, const SphericalSpectrum& spec, const Quaternion& s, double guard) {
  if (!t.is_square()) throw ValidationError("operator must be square");
  SResolventSample out;
  out.s = s;
  out.distance = distance_to_set(sphere_of(s), spec.spheres);
  const CMatrix d = chi(delta(t, s));
  Eigen::PartialPivLU<CMatrix> lu;
  if (t.rows() > 0) {
    lu.compute(d);
    out.rcond = lu.rcond();
  } else {
    out.rcond = 1.0;
  }
  if (out.distance <= guard * spec.norm || out.rcond < 1e-14) {
    std::ostringstream msg;
    msg << "s = " << s << " is too close to the S-spectrum (distance " << out.distance << ", rcond " << out.rcond
        << ")";
    throw SingularityError(msg.str(), out.distance, out.rcond);
  }
  if (t.rows() == 0) return out;
  const CMatrix shifted = chi(t - QMatrix::scalar(t.rows(), s.conj()));
  const CMatrix inv = lu.inverse();
  out.left = -chi_inv_nearest(inv * shifted);
  out.right = -chi_inv_nearest(shifted * inv);
  return out;
}

double left_identity_residual(const QMatrix& t, const SResolventSample& r) {
  const QMatrix res = r.left * r.s - t * r.left - QMatrix::identity(t.rows());
  return op_norm(res) / std::max(op_norm(r.left) * (r.s.norm() + op_norm(t)), 1e-300);
}

double right_identity_residual(const QMatrix& t, const SResolventSample& r) {
  const QMatrix res = r.s * r.right - r.right * t - QMatrix::identity(t.rows());
  return op_norm(res) / std::max(op_norm(r.right) * (r.s.norm() + op_norm(t)), 1e-300);
}

double s_resolvent_equation_residual(const QMatrix&, const SResolventSample& at_s, const SResolventSample& at_p) {
  const Quaternion& s = at_s.s;
  const Quaternion& p = at_p.s;
  const QMatrix lhs = at_s.right * at_p.left;
  const QMatrix diff = at_s.right - at_p.left;
  const Quaternion q = p * p - (2.0 * s.real()) * p + Quaternion(s.norm2());
  const QMatrix rhs = (diff * p - s.conj() * diff) * q.inverse();
  return op_norm(lhs - rhs) / std::max(1.0, op_norm(lhs));
}

}  // namespace quatcalc
