#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quatcalc/qmatrix.hpp"

namespace quatcalc {

/// Eigenvalues of chi(T) within this multiple of max(1, ||T||) are merged
/// into one sphere. Defective eigenvalues split by about eps^(1/k) for a
/// Jordan block of size k, so the default is far above 1e-9.
inline constexpr double kSpectrumClusterTol = 1e-4;

/// Delta_q(T) = T^2 - 2 re(q) T + |q|^2 I.
QMatrix delta(const QMatrix& t, const Quaternion& q);

struct SphericalSpectrum {
  std::vector<Sphere> spheres;               ///< sorted by (re, rad)
  std::vector<std::size_t> multiplicities;   ///< quaternionic algebraic multiplicity
  /// Smallest singular value of chi(Delta_q(T)) at each sphere; a cross-check
  /// that the sphere really is spectral.
  std::vector<double> delta_sigma_min;
  double norm = 0.0;  ///< ||T||
  double tol = 0.0;   ///< relative cluster radius used

  std::size_t size() const { return spheres.size(); }
};

/// sigma_S(T): circularized eigenvalues of chi(T), clustered within
/// tol * max(1, ||T||).
SphericalSpectrum spherical_spectrum(const QMatrix& t, double tol = kSpectrumClusterTol);

/// Jordan structure of T at one sphere, read off chi(T) - lambda I with
/// lambda = re + i rad by staircase rank decisions on its powers.
struct JordanStructure {
  Sphere sphere;
  std::size_t algebraic = 0;               ///< quaternionic algebraic multiplicity
  std::vector<std::size_t> block_sizes;    ///< quaternionic Jordan blocks, descending
  bool determinate = true;
  /// Worst ratio between a rank-deciding singular value and the nearest
  /// threshold (>= 1 for clear decisions).
  double margin = 0.0;
  std::string note;
};

inline constexpr double kRankZeroTol = 1e-8;
inline constexpr double kRankClearTol = 1e-4;

/// Singular values of A^k at or below zero_tol * s^k count as zero, those at
/// or above clear_tol * s^k as nonzero (s = max(1, ||A||)); anything between
/// makes the result indeterminate.
JordanStructure jordan_structure(const QMatrix& t, const Sphere& sphere, std::size_t algebraic,
                                 double zero_tol = kRankZeroTol, double clear_tol = kRankClearTol);

struct PointSpectrumEntry {
  Sphere sphere;
  std::size_t multiplicity = 0;  ///< algebraic
  std::size_t kernel_dim = 0;    ///< dim_H N(Delta_q(T))
  std::size_t eigen_dim = 0;     ///< dim_H {v : T v = v q}, q in the sphere
  JordanStructure jordan;
};

/// sigma_pS(T) with kernel dimensions of Delta_q(T). For matrices the support
/// equals sigma_S(T).
std::vector<PointSpectrumEntry> point_spectrum(const QMatrix& t, double tol = kSpectrumClusterTol);

/// Complex point spectrum of a C_i-linear operator given as a complex matrix,
/// folded into spheres (used to compare T+ with T~).
SphericalSpectrum complex_spectrum_spheres(const CMatrix& tp, double tol = kSpectrumClusterTol);

struct SResolventSample {
  Quaternion s;
  QMatrix left;   ///< S_L^{-1}(s, T) = -Delta_s(T)^{-1} (T - conj(s) I)
  QMatrix right;  ///< S_R^{-1}(s, T) = -(T - conj(s) I) Delta_s(T)^{-1}
  double distance = 0.0;   ///< distance from [s] to sigma_S(T)
  double rcond = 0.0;      ///< reciprocal condition estimate of chi(Delta_s(T))
};

/// Refusal radius for resolvents, relative to ||T||.
inline constexpr double kResolventGuard = 1e-8;

/// Throws SingularityError if [s] is within guard * ||T|| of sigma_S(T) or
/// Delta_s(T) is numerically singular.
SResolventSample s_resolvent(const QMatrix& t, const Quaternion& s, double guard = kResolventGuard);
/// Same, with a precomputed spectrum of t.
SResolventSample s_resolvent(const QMatrix& t, const SphericalSpectrum& spec, const Quaternion& s,
                             double guard = kResolventGuard);

/// ||S_L s - T S_L - I|| / (||S_L|| (|s| + ||T||)).
double left_identity_residual(const QMatrix& t, const SResolventSample& r);
/// ||s S_R - S_R T - I|| / (||S_R|| (|s| + ||T||)).
double right_identity_residual(const QMatrix& t, const SResolventSample& r);

/// Relative residual of
///   S_R(s) S_L(p) = [(S_R(s) - S_L(p)) p - conj(s) (S_R(s) - S_L(p))] (p^2 - 2 re(s) p + |s|^2)^{-1}
/// normalized by max(1, ||S_R(s) S_L(p)||).
double s_resolvent_equation_residual(const QMatrix& t, const SResolventSample& at_s, const SResolventSample& at_p);

}  // namespace quatcalc
