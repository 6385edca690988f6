#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "quatcalc/qmatrix.hpp"
#include "quatcalc/spectrum.hpp"

namespace quatcalc {

inline constexpr std::size_t kDefaultNodes = 128;
inline constexpr std::size_t kMinNodes = 16;

/// Circle in the slice C_m centered on the real axis, counterclockwise.
struct Circle {
  double center = 0.0;
  double radius = 0.0;
  /// Distance from the circle to the nearest enclosed / excluded trace.
  double inner_clearance = 0.0;
  double outer_clearance = 0.0;
  /// max(R_in / r, r / R_out): geometric convergence rate of the trapezoid rule.
  double convergence_ratio = 0.0;
};

/// Axially symmetric integration boundary: union of disjoint circles in C_m.
struct Contour {
  ImaginaryUnit m = ImaginaryUnit::i();
  std::vector<Circle> circles;
  std::size_t nodes = kDefaultNodes;  ///< per circle
  double separation = 0.0;            ///< distance between enclosed and excluded spheres

  /// True if the C_m trace of the sphere lies strictly inside some circle.
  bool encloses(const Sphere& s) const;
};

/// Circles centered on R enclosing every sphere of sigma and none of other.
/// Each circle sits at the log-distance midpoint between the farthest
/// enclosed trace R_in and the nearest excluded trace R_out,
/// r = sqrt(max(R_in, R_out / 9) * R_out), so both clearances are at least
/// (R_out - R_in) / 4. Overlapping disks are merged.
/// Throws SeparationError if sigma and other intersect or no such circle
/// exists, ValidationError for nodes < kMinNodes or empty sigma.
Contour build_contour(const std::vector<Sphere>& sigma, const std::vector<Sphere>& other,
                      const ImaginaryUnit& m = ImaginaryUnit::i(), std::size_t nodes = kDefaultNodes);

/// Union of two contours in the same slice; throws SeparationError if any
/// disks intersect.
Contour merge_contours(const Contour& a, const Contour& b);

/// Node s_k and left scalar weight w_k of the quadrature for
/// (1/2pi) int ds_m g(s): ds_m = r e^{m theta} d theta, so w_k = (s_k - c) / N.
struct QuadratureNode {
  Quaternion s;
  Quaternion weight;
};
std::vector<QuadratureNode> quadrature_nodes(const Contour& c);

/// Function evaluable on contour nodes. Intrinsic functions map every slice
/// C_m into itself; only those carry the slice-independence guarantee.
struct SliceFunction {
  std::function<Quaternion(const Quaternion&)> eval;
  bool intrinsic = true;
  std::string name;
};

SliceFunction constant_function(double value);
/// sum_k coeffs[k] q^k (real coefficients, intrinsic).
SliceFunction polynomial_function(std::vector<double> coeffs);
/// 1 on and inside the circles of `sigma`, 0 elsewhere.
SliceFunction characteristic_function(const Contour& sigma);
/// f^(q) = conj(f(conj(q))).
SliceFunction hat(const SliceFunction& f);

enum class Side { left, right };

/// Trapezoid quadrature of
///   left:  f(T) = (1/2pi) int S_L^{-1}(s, T) ds_m f(s)
///   right: f(T) = (1/2pi) int f(s) ds_m S_R^{-1}(s, T)
/// Node evaluations run in parallel; the sum is taken in node order.
/// Throws SingularityError if a node is too close to sigma_S(T).
QMatrix func_calc(const SliceFunction& f, Side side, const QMatrix& t, const Contour& c);

/// P = (1/2pi) int ds_m S_R^{-1}(s, T).
QMatrix riesz_projection(const QMatrix& t, const Contour& c);

/// ||f(T)* - f^(T*)|| from two independent quadratures over the same contour
/// (sigma_S(T*) = sigma_S(T)).
double calc_adjoint_check(const SliceFunction& f, const QMatrix& t, const Contour& c, Side side = Side::left);

/// Maps requested spheres onto spheres of spec (each within tol of exactly
/// one spectral sphere). Throws PartitionError on unmatched or repeated
/// requests.
std::vector<Sphere> match_spheres(const SphericalSpectrum& spec, const std::vector<Sphere>& requested, double tol);

struct RieszTolerances {
  double step = 1e-10;       ///< Steps I-III
  double spectrum = 1e-8;    ///< Step IV Hausdorff distance
  double normal = 1e-10;     ///< normality defect that enables the self-adjointness check
};

struct RieszResiduals {
  double idempotent_sigma = 0.0;     ///< ||P_s^2 - P_s||
  double idempotent_tau = 0.0;
  double self_adjoint_sigma = 0.0;   ///< ||P_s* - P_s||
  double self_adjoint_tau = 0.0;
  double sum = 0.0;                  ///< ||P_s + P_t - I||
  double product = 0.0;              ///< ||P_s P_t||
  double commute_sigma = 0.0;        ///< ||T P_s - P_s T|| / ||T||
  double commute_tau = 0.0;
  double hausdorff_sigma = 0.0;      ///< d_H(sigma_S(T|M_s), sigma)
  double hausdorff_tau = 0.0;
};

struct RieszPair {
  std::vector<Sphere> sigma, tau;
  QMatrix p_sigma, p_tau;
  QMatrix basis_sigma, basis_tau;             ///< orthonormal columns spanning R(P)
  QMatrix restricted_sigma, restricted_tau;   ///< T|M in those bases
  SphericalSpectrum spectrum_sigma, spectrum_tau;
  Contour contour_sigma, contour_tau;
  /// P_sigma = I - P_tau because no circle contour encloses sigma alone
  /// (and likewise for tau).
  bool sigma_from_complement = false;
  bool tau_from_complement = false;
  RieszResiduals residuals;
  double normality_defect = 0.0;
  /// Self-adjointness of P is only a theorem for normal T; it is certified
  /// when T is normal and reported otherwise.
  bool self_adjoint_checked = false;
  bool certified = false;
  std::vector<std::string> failures;
};

/// Riesz decomposition along sigma | tau (sigma u tau = sigma_S(T)).
/// Throws PartitionError for an invalid partition, SeparationError when
/// neither side admits a circle contour.
RieszPair riesz_decompose(const QMatrix& t, const std::vector<Sphere>& sigma, const std::vector<Sphere>& tau,
                          std::size_t nodes = kDefaultNodes, const ImaginaryUnit& m = ImaginaryUnit::i(),
                          const RieszTolerances& tol = {});

/// Complement partition: tau = sigma_S(T) minus sigma, with requested spheres
/// matched against the spectrum within match_tol.
RieszPair riesz_decompose(const QMatrix& t, const std::vector<Sphere>& sigma, double match_tol,
                          std::size_t nodes = kDefaultNodes, const ImaginaryUnit& m = ImaginaryUnit::i(),
                          const RieszTolerances& tol = {});

}  // namespace quatcalc
