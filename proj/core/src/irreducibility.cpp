#include "quatcalc/irreducibility.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "quatcalc/error.hpp"
#include "quatcalc/scalculus.hpp"

namespace quatcalc {

namespace {

using cd = std::complex<double>;
using RMatrix = Eigen::MatrixXd;

std::size_t coord(std::size_t n, std::size_t r, std::size_t c, int comp) { return 4 * (r * n + c) + comp; }

QMatrix unit_matrix(std::size_t n, std::size_t r, std::size_t c, int comp) {
  QMatrix e(n, n);
  double* q = &e(r, c).w;
  q[comp] = 1.0;
  return e;
}

Eigen::VectorXd flatten(const QMatrix& x) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(4 * x.rows() * x.cols()));
  Eigen::Index k = 0;
  for (const auto& q : x.data()) {
    v(k++) = q.w;
    v(k++) = q.x;
    v(k++) = q.y;
    v(k++) = q.z;
  }
  return v;
}

QMatrix unflatten(std::size_t n, const Eigen::VectorXd& v) {
  QMatrix x(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const auto k = static_cast<Eigen::Index>(coord(n, r, c, 0));
      x(r, c) = {v(k), v(k + 1), v(k + 2), v(k + 3)};
    }
  return x;
}

using LinearMap = std::function<QMatrix(const QMatrix&)>;

// Real null space of the stacked maps, as orthonormal coordinate vectors.
CommutantBasis null_space(std::size_t n, const std::vector<LinearMap>& maps, double rel_tol) {
  if (n > kMaxCommutantSize) throw ValidationError("commutant computations are limited to n <= 16");
  const std::size_t dim = 4 * n * n;
  RMatrix a(static_cast<Eigen::Index>(dim * maps.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (int comp = 0; comp < 4; ++comp) {
        const QMatrix e = unit_matrix(n, r, c, comp);
        const auto col = static_cast<Eigen::Index>(coord(n, r, c, comp));
        for (std::size_t m = 0; m < maps.size(); ++m)
          a.block(static_cast<Eigen::Index>(m * dim), col, static_cast<Eigen::Index>(dim), 1) = flatten(maps[m](e));
      }
  CommutantBasis out;
  if (dim == 0) return out;
  Eigen::BDCSVD<RMatrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, s(0));
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dim); ++k) {
    const double sv = k < s.size() ? s(k) : 0.0;
    if (sv <= cutoff) out.basis.push_back(unflatten(n, svd.matrixV().col(k)));
  }
  return out;
}

double real_inner(const QMatrix& a, const QMatrix& b) { return flatten(a).dot(flatten(b)); }

bool is_scalar_multiple_of_identity(const QMatrix& x, double tol) {
  const std::size_t n = x.rows();
  double mean = 0.0;
  for (std::size_t r = 0; r < n; ++r) mean += x(r, r).w;
  mean /= static_cast<double>(n);
  return (x - QMatrix::scalar(n, mean)).max_abs() <= tol * std::max(1.0, x.max_abs());
}

// Fixed probe matrices: a real diagonal ramp and two dense quaternionic
// patterns with incommensurate entries.
std::vector<QMatrix> probes(std::size_t n, bool hermitian) {
  std::vector<QMatrix> out;
  QMatrix ramp(n, n);
  for (std::size_t r = 0; r < n; ++r) ramp(r, r) = static_cast<double>(r + 1);
  out.push_back(ramp);
  for (int variant = 0; variant < 2; ++variant) {
    QMatrix d(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const double a = static_cast<double>(r + 1), b = static_cast<double>(c + 1);
        d(r, c) = {std::sin(1.3 * a + 0.7 * b + variant), std::cos(0.9 * a * b + variant), std::sin(2.1 * a - 1.7 * b),
                   std::cos(0.4 * a + 2.3 * b * b)};
      }
    out.push_back(hermitian ? 0.5 * (d + d.adjoint()) : d);
  }
  return out;
}

// Spectral projection of a self-adjoint X onto the eigenspace of its largest
// eigenvalue cluster.
QMatrix top_eigenprojection(const QMatrix& x) {
  const QMatrix h = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(chi(h));
  const auto& ev = es.eigenvalues();
  const double spread = std::max(ev.maxCoeff() - ev.minCoeff(), 1e-300);
  const double top = ev.maxCoeff();
  Eigen::Index k = 0;
  while (k < ev.size() && ev(k) < top - 1e-6 * spread) ++k;
  const CMatrix v = es.eigenvectors().rightCols(ev.size() - k);
  const QMatrix p = chi_inv_nearest(v * v.adjoint());
  return 0.5 * (p + p.adjoint());
}

bool valid_idempotent(const QMatrix& t, const QMatrix& e, double tol) {
  const std::size_t n = t.rows();
  const double scale = std::max(1.0, op_norm(t));
  if ((e * e - e).max_abs() > tol * std::max(1.0, e.max_abs())) return false;
  if (op_norm(t * e - e * t) > tol * scale * std::max(1.0, op_norm(e))) return false;
  return rank(e, 1e-6) > 0 && rank(QMatrix::identity(n) - e, 1e-6) > 0;
}

std::optional<QMatrix> idempotent_from_commutant(const QMatrix& t) {
  const std::size_t n = t.rows();
  if (n > kMaxCommutantSize) return std::nullopt;
  const CommutantBasis comm = commutant(t);
  std::vector<QMatrix> candidates;
  for (const auto& d : probes(n, false)) candidates.push_back(project_onto(comm, d));
  std::mt19937_64 rng(20260101);
  std::normal_distribution<double> g;
  for (int k = 0; k < 16; ++k) {
    QMatrix c(n, n);
    for (const auto& b : comm.basis) c += g(rng) * b;
    candidates.push_back(c);
  }
  for (const auto& c : candidates) {
    if (is_scalar_multiple_of_identity(c, 1e-8)) continue;
    const SphericalSpectrum spec = spherical_spectrum(c);
    if (spec.size() < 2) continue;
    try {
      const QMatrix e = complex_spectral_projection(c, spec.spheres.front());
      if (valid_idempotent(t, e, 1e-8)) return e;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

// Single-linkage clusters of complex eigenvalues (no conjugate pairing).
std::vector<std::vector<cd>> cluster_complex(const std::vector<cd>& pts, double tol) {
  std::vector<int> label(pts.size(), -1);
  int next = 0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    if (label[a] >= 0) continue;
    label[a] = next;
    std::vector<std::size_t> stack{a};
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < pts.size(); ++b)
        if (label[b] < 0 && std::abs(pts[u] - pts[b]) <= tol) {
          label[b] = next;
          stack.push_back(b);
        }
    }
    ++next;
  }
  std::vector<std::vector<cd>> out(static_cast<std::size_t>(next));
  for (std::size_t a = 0; a < pts.size(); ++a) out[static_cast<std::size_t>(label[a])].push_back(pts[a]);
  return out;
}

cd mean(const std::vector<cd>& v) {
  cd s{0.0, 0.0};
  for (const auto& z : v) s += z;
  return s / static_cast<double>(v.size());
}

// (1/N) sum (z_k - c)(z_k - A)^{-1} over circles around the given centers.
CMatrix complex_contour_projection(const CMatrix& a, const std::vector<cd>& centers, double radius, std::size_t nodes) {
  const Eigen::Index n = a.rows();
  CMatrix p = CMatrix::Zero(n, n);
  const CMatrix id = CMatrix::Identity(n, n);
  for (const auto& c : centers)
    for (std::size_t k = 0; k < nodes; ++k) {
      const double theta = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(nodes);
      const cd offset = radius * cd{std::cos(theta), std::sin(theta)};
      p += (offset / static_cast<double>(nodes)) * ((c + offset) * id - a).partialPivLu().inverse();
    }
  return p;
}

// Isolating radius for a cluster: half the gap to the rest of the spectrum,
// requiring the cluster's own spread to stay well inside.
double isolating_radius(const std::vector<cd>& all, const std::vector<cd>& centers, double cluster_spread,
                        double match_tol) {
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& z : all) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& c : centers) nearest = std::min(nearest, std::abs(z - c));
    if (nearest > match_tol) gap = std::min(gap, nearest);
  }
  if (centers.size() == 2) gap = std::min(gap, std::abs(centers[0] - centers[1]));
  const double radius = 0.5 * gap;
  if (!(radius > 4.0 * cluster_spread)) throw SeparationError("eigenvalue cluster cannot be isolated", gap);
  return radius;
}

}  // namespace

CommutantBasis commutant(const QMatrix& t, double rel_tol) {
  if (!t.is_square()) throw ValidationError("operator must be square");
  return null_space(t.rows(), {[&](const QMatrix& x) { return x * t - t * x; }}, rel_tol);
}

CommutantBasis self_adjoint_commutant(const QMatrix& t, double rel_tol) {
  if (!t.is_square()) throw ValidationError("operator must be square");
  const QMatrix ta = t.adjoint();
  return null_space(t.rows(),
                    {[&](const QMatrix& x) { return x * t - t * x; }, [&](const QMatrix& x) { return x * ta - ta * x; },
                     [](const QMatrix& x) { return x - x.adjoint(); }},
                    rel_tol);
}

QMatrix project_onto(const CommutantBasis& basis, const QMatrix& x) {
  QMatrix out(x.rows(), x.cols());
  for (const auto& b : basis.basis) out += real_inner(b, x) * b;
  return out;
}

ReducibilityResult is_reducible(const QMatrix& t) {
  if (!t.is_square() || t.rows() == 0) throw ValidationError("operator must be square and nonempty");
  ReducibilityResult out;
  const std::size_t n = t.rows();
  if (n == 1) return out;
  const CommutantBasis sa = self_adjoint_commutant(t);
  out.reducible = sa.dim() > 1;
  if (!out.reducible) return out;

  std::vector<QMatrix> candidates;
  for (const auto& d : probes(n, true)) candidates.push_back(project_onto(sa, d));
  candidates.insert(candidates.end(), sa.basis.begin(), sa.basis.end());
  for (const auto& x : candidates) {
    if (is_scalar_multiple_of_identity(x, 1e-8)) continue;
    QMatrix p = top_eigenprojection(x);
    const QMatrix q = QMatrix::identity(n) - p;
    if (q(0, 0).w > p(0, 0).w) p = q;
    if (valid_idempotent(t, p, 1e-8)) {
      out.witness = p;
      break;
    }
  }
  return out;
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::yes: return "true";
    case Decision::no: return "false";
    case Decision::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

QMatrix complex_spectral_projection(const QMatrix& t, const Sphere& sphere, std::size_t nodes) {
  const CMatrix a = chi(t);
  Eigen::ComplexEigenSolver<CMatrix> es(a, false);
  std::vector<cd> all(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  const double match_tol = kSpectrumClusterTol * std::max(1.0, complex_norm(a));
  const cd lambda{sphere.re, sphere.rad};
  std::vector<cd> centers{lambda};
  if (sphere.rad > match_tol) centers.push_back(std::conj(lambda));
  double spread = 0.0;
  for (const auto& z : all)
    for (const auto& c : centers)
      if (std::abs(z - c) <= match_tol) spread = std::max(spread, std::abs(z - c));
  const double radius = isolating_radius(all, centers, spread, match_tol);
  const QMatrix p = chi_inv_nearest(complex_contour_projection(a, centers, radius, nodes));
  return p;
}

namespace {

/// Nodes per circle for which the trapezoid error ratio^N reaches rounding,
/// at least kDefaultNodes; kDefaultNodes when no contour encloses sigma.
std::size_t nodes_for(const std::vector<Sphere>& sigma, const std::vector<Sphere>& other) {
  try {
    double ratio = 0.0;
    for (const auto& c : build_contour(sigma, other).circles) ratio = std::max(ratio, c.convergence_ratio);
    if (ratio <= 0.0 || ratio >= 1.0) return kDefaultNodes;
    const double n = std::ceil(std::log(1e-17) / std::log(ratio));
    return std::clamp<std::size_t>(static_cast<std::size_t>(n), kDefaultNodes, 4096);
  } catch (const SeparationError&) {
    return kDefaultNodes;
  }
}

}  // namespace

IrreducibilityReport is_strongly_irreducible(const QMatrix& t) {
  if (!t.is_square() || t.rows() == 0) throw ValidationError("operator must be square and nonempty");
  IrreducibilityReport out;
  const std::size_t n = t.rows();
  const SphericalSpectrum spec = spherical_spectrum(t);
  out.sphere_count = spec.size();
  const bool small = n <= kMaxCommutantSize;
  if (small) {
    const ReducibilityResult red = is_reducible(t);
    out.irreducible = !red.reducible;
  }

  if (spec.size() > 1) {
    out.strongly_irreducible = Decision::no;
    const std::vector<Sphere> first{spec.spheres.front()};
    const std::vector<Sphere> rest(spec.spheres.begin() + 1, spec.spheres.end());
    const auto idempotent_defect = [](const QMatrix& e) { return op_norm(e * e - e); };
    double best = std::numeric_limits<double>::infinity();
    try {
      const std::size_t nodes = std::max(nodes_for(first, rest), nodes_for(rest, first));
      QMatrix p = riesz_decompose(t, first, rest, nodes).p_sigma;
      best = idempotent_defect(p);
      out.witness = std::move(p);
      out.note = "several spheres in the S-spectrum; witness is the Riesz projection onto the first";
    } catch (const Error&) {
    }
    if (!(best <= 1e-12)) {
      QMatrix p = complex_spectral_projection(t, spec.spheres.front());
      if (idempotent_defect(p) < best) {
        out.witness = std::move(p);
        out.note = "several spheres in the S-spectrum; witness is the spectral projection of chi(T) onto the first";
      }
    }
    if (!small) out.irreducible = false;
    return out;
  }

  const JordanStructure js = jordan_structure(t, spec.spheres.front(), spec.multiplicities.front());
  out.block_sizes = js.block_sizes;
  out.margin = js.margin;
  if (!js.determinate) {
    out.strongly_irreducible = Decision::indeterminate;
    out.note = js.note;
    return out;
  }
  if (js.block_sizes.size() == 1) {
    out.strongly_irreducible = Decision::yes;
    out.irreducible = true;
    out.note = "single sphere with a single Jordan block";
    return out;
  }
  out.strongly_irreducible = Decision::no;
  out.note = "single sphere with several Jordan blocks";
  if (small) {
    const ReducibilityResult red = is_reducible(t);
    if (red.witness) out.witness = red.witness;
    else out.witness = idempotent_from_commutant(t);
  }
  if (!out.witness) out.note += "; no witness constructed";
  return out;
}

Decision complex_strongly_irreducible(const CMatrix& s, std::optional<CMatrix>* witness) {
  if (s.rows() != s.cols() || s.rows() == 0) throw ValidationError("operator must be square and nonempty");
  Eigen::ComplexEigenSolver<CMatrix> es(s, false);
  std::vector<cd> all(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  const double scale = std::max(1.0, complex_norm(s));
  const auto clusters = cluster_complex(all, kSpectrumClusterTol * scale);
  if (clusters.size() > 1) {
    if (witness) {
      const auto& first = *std::min_element(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
        const cd ma = mean(a), mb = mean(b);
        return ma.real() != mb.real() ? ma.real() < mb.real() : ma.imag() < mb.imag();
      });
      double spread = 0.0;
      const cd c = mean(first);
      for (const auto& z : first) spread = std::max(spread, std::abs(z - c));
      try {
        *witness = complex_contour_projection(s, {c}, isolating_radius(all, {c}, spread, kSpectrumClusterTol * scale), 256);
      } catch (const Error&) {
      }
    }
    return Decision::no;
  }
  const cd mu = mean(clusters.front());
  const CMatrix a = s - mu * CMatrix::Identity(s.rows(), s.cols());
  Eigen::BDCSVD<CMatrix> svd(a);
  const auto& sv = svd.singularValues();
  const double sa = std::max(1.0, complex_norm(a));
  std::size_t zeros = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) <= kRankZeroTol * sa) ++zeros;
    else if (sv(k) < kRankClearTol * sa) return Decision::indeterminate;
  }
  return zeros == 1 ? Decision::yes : Decision::no;
}

bool complex_irreducible(const CMatrix& s) {
  const Eigen::Index n = s.rows();
  if (n <= 1) return true;
  const CMatrix id = CMatrix::Identity(n, n);
  // vec(X S - S X) = (S^T kron I - I kron S) vec(X), column-major vec.
  auto kron = [](const CMatrix& a, const CMatrix& b) {
    CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c) k.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return k;
  };
  const CMatrix sa = s.adjoint();
  CMatrix m(2 * n * n, n * n);
  m.topRows(n * n) = kron(s.transpose(), id) - kron(id, s);
  m.bottomRows(n * n) = kron(sa.transpose(), id) - kron(id, sa);
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, sv(0));
  Eigen::Index zeros = n * n - sv.size();
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) <= cutoff) ++zeros;
  return zeros == 1;
}

ExtensionIrreducibilityReport extension_irreducibility_check(const CMatrix& sp, const AntiSelfAdjointUnitary& j) {
  ExtensionIrreducibilityReport out;
  const QMatrix ext = extend(sp, j);
  out.complex_strong = complex_strongly_irreducible(sp, &out.complex_witness);
  out.complex_irreducible = complex_irreducible(sp);
  out.quaternionic = is_strongly_irreducible(ext);
  out.strong_agree = out.complex_strong != Decision::indeterminate &&
                     out.complex_strong == out.quaternionic.strongly_irreducible;
  out.irreducible_agree = out.complex_irreducible == out.quaternionic.irreducible;
  return out;
}

}  // namespace quatcalc
