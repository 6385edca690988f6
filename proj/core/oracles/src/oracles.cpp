#include "quatcalc/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>

#include "quatcalc/error.hpp"
#include "quatcalc/parallel.hpp"
#include "quatcalc/random.hpp"

namespace quatcalc::oracles {

namespace {

using cd = std::complex<double>;
using RMatrix = Eigen::MatrixXd;

// Coefficients of q p (left) and p q (right) as 4x4 real matrices acting on p.
Eigen::Matrix4d left_mult(const Quaternion& q) {
  Eigen::Matrix4d m;
  m << q.w, -q.x, -q.y, -q.z,
       q.x, q.w, -q.z, q.y,
       q.y, q.z, q.w, -q.x,
       q.z, -q.y, q.x, q.w;
  return m;
}

Eigen::Matrix4d right_mult(const Quaternion& q) {
  Eigen::Matrix4d m;
  m << q.w, -q.x, -q.y, -q.z,
       q.x, q.w, q.z, -q.y,
       q.y, -q.z, q.w, q.x,
       q.z, q.y, -q.x, q.w;
  return m;
}

Eigen::VectorXd flat(const QMatrix& x) {
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

Eigen::VectorXd flat(const CMatrix& x) {
  Eigen::VectorXd v(2 * x.size());
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      v(k++) = x(r, c).real();
      v(k++) = x(r, c).imag();
    }
  return v;
}

QMatrix identity_like(const QMatrix& t) { return QMatrix::identity(t.rows()); }
CMatrix identity_like(const CMatrix& t) { return CMatrix::Identity(t.rows(), t.cols()); }

double trace_re(const QMatrix& e) {
  double s = 0.0;
  for (std::size_t r = 0; r < e.rows(); ++r) s += e(r, r).w;
  return s;
}
double trace_re(const CMatrix& e) { return e.trace().real(); }

std::size_t dimension(const QMatrix& t) { return t.rows(); }
std::size_t dimension(const CMatrix& t) { return static_cast<std::size_t>(t.rows()); }

template <class M>
M combine(const std::vector<M>& basis, const Eigen::VectorXd& c, const M& zero) {
  M e = zero;
  for (std::size_t b = 0; b < basis.size(); ++b) e = e + c(static_cast<Eigen::Index>(b)) * basis[b];
  return e;
}

template <class M>
struct StartResult {
  enum Kind { trivial, nontrivial, failed } kind = failed;
  Eigen::VectorXd flat_witness;
  M witness;
};

template <class M>
StartResult<M> lm_start(const std::vector<M>& basis, const M& zero, const Eigen::VectorXd& c0) {
  StartResult<M> out;
  const auto d = static_cast<Eigen::Index>(basis.size());
  const std::size_t n = dimension(zero);
  auto residual = [&](const Eigen::VectorXd& c, M& e) {
    e = combine(basis, c, zero);
    return Eigen::VectorXd(flat(M(e * e - e)));
  };
  Eigen::VectorXd c = c0;
  M e = zero;
  Eigen::VectorXd f = residual(c, e);
  double mu = 1e-3;
  for (int it = 0; it < 400 && f.norm() > 1e-13; ++it) {
    RMatrix jac(f.size(), d);
    for (Eigen::Index b = 0; b < d; ++b) {
      const M& bb = basis[static_cast<std::size_t>(b)];
      jac.col(b) = flat(M(bb * e + e * bb - bb));
    }
    const RMatrix jtj = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * f;
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      RMatrix a = jtj;
      a.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd step = a.ldlt().solve(-g);
      M trial_e = zero;
      const Eigen::VectorXd trial_c = c + step;
      const Eigen::VectorXd trial_f = residual(trial_c, trial_e);
      if (trial_f.norm() < f.norm()) {
        c = trial_c;
        e = trial_e;
        f = trial_f;
        mu = std::max(mu / 3.0, 1e-15);
        improved = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!improved) break;
  }
  if (f.norm() > 1e-10) return out;
  const double tr = trace_re(e);
  const double rounded = std::round(tr);
  if (std::abs(tr - rounded) > 1e-6) return out;
  if (rounded < 0.5 || rounded > static_cast<double>(n) - 0.5) {
    out.kind = StartResult<M>::trivial;
    return out;
  }
  out.kind = StartResult<M>::nontrivial;
  out.witness = e;
  out.flat_witness = flat(e);
  return out;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index k = 0; k < std::min(a.size(), b.size()); ++k) {
    const double x = std::round(a(k) * 1e8), y = std::round(b(k) * 1e8);
    if (x != y) return x < y;
  }
  return a.size() < b.size();
}

template <class M>
std::vector<StartResult<M>> run_search(const std::vector<M>& basis, const M& zero, std::size_t starts,
                                       std::uint64_t seed) {
  std::vector<StartResult<M>> results(starts);
  if (basis.empty()) return results;
  RMatrix bm(flat(zero).size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t b = 0; b < basis.size(); ++b) bm.col(static_cast<Eigen::Index>(b)) = flat(basis[b]);
  const Eigen::VectorXd id_coords = bm.colPivHouseholderQr().solve(flat(identity_like(zero)));
  parallel_for(starts, [&](std::size_t s) {
    std::mt19937_64 rng(seed + 1000003ULL * s);
    std::normal_distribution<double> g;
    Eigen::VectorXd c = 0.5 * id_coords;
    const double scale = std::sqrt(static_cast<double>(dimension(zero)) / static_cast<double>(basis.size()));
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) += 0.7 * scale * g(rng);
    results[s] = lm_start(basis, zero, c);
  });
  return results;
}

template <class M>
IdempotentSearch summarize(const std::vector<StartResult<M>>& results) {
  IdempotentSearch out;
  out.starts = results.size();
  const StartResult<M>* best = nullptr;
  for (const auto& r : results) {
    switch (r.kind) {
      case StartResult<M>::trivial: ++out.converged_trivial; break;
      case StartResult<M>::failed: ++out.not_converged; break;
      case StartResult<M>::nontrivial:
        ++out.converged_nontrivial;
        if (!best || lex_less(r.flat_witness, best->flat_witness)) best = &r;
        break;
    }
  }
  out.found = best != nullptr;
  if constexpr (std::is_same_v<M, QMatrix>) {
    if (best) out.witness = best->witness;
  }
  return out;
}

}  // namespace

double power_iteration_norm(const QMatrix& t, std::size_t iterations, std::uint64_t seed) {
  if (t.cols() == 0 || t.rows() == 0) return 0.0;
  Rng rng(seed);
  QVector v(t.cols());
  for (auto& q : v) q = random_quaternion(rng);
  const QMatrix ta = t.adjoint();
  double lambda = 0.0;
  for (std::size_t it = 0; it < iterations; ++it) {
    const double vn = norm(v);
    if (vn == 0.0) return 0.0;
    for (auto& q : v) q = q / vn;
    const QVector w = quatcalc::apply(ta, quatcalc::apply(t, v));
    lambda = inner(v, w).w;
    v = w;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

QMatrix eigenprojection(const QMatrix& t, const std::vector<Sphere>& sigma, double tol) {
  Eigen::ComplexEigenSolver<CMatrix> es(chi(t));
  const CMatrix& v = es.eigenvectors();
  Eigen::VectorXcd mask(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const cd z = es.eigenvalues()(k);
    const Sphere s{z.real(), std::abs(z.imag())};
    mask(k) = distance_to_set(s, sigma) <= tol ? 1.0 : 0.0;
  }
  const CMatrix p = v * mask.asDiagonal() * v.inverse();
  return chi_inv_nearest(p);
}

QMatrix modulus_from_gram(const QMatrix& t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(chi(t.adjoint() * t));
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return chi_inv_nearest(es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint());
}

std::size_t commutant_dimension(const QMatrix& t, double rel_tol) {
  const std::size_t n = t.rows();
  const auto dim = static_cast<Eigen::Index>(4 * n * n);
  RMatrix a = RMatrix::Zero(dim, dim);
  auto idx = [n](std::size_t r, std::size_t c) { return static_cast<Eigen::Index>(4 * (r * n + c)); };
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t k = 0; k < n; ++k) {
        // (X T)_rc gains X_rk T_kc; (T X)_rc gains T_rk X_kc.
        a.block<4, 4>(idx(r, c), idx(r, k)) += right_mult(t(k, c));
        a.block<4, 4>(idx(r, c), idx(k, c)) -= left_mult(t(r, k));
      }
  Eigen::FullPivLU<RMatrix> lu(a);
  lu.setThreshold(rel_tol);
  return static_cast<std::size_t>(dim - lu.rank());
}

IdempotentSearch brute_force_idempotent(const QMatrix& t, std::size_t starts, std::uint64_t seed) {
  const CommutantBasis comm = commutant(t);
  return summarize(run_search(comm.basis, QMatrix(t.rows(), t.cols()), starts, seed));
}

IdempotentSearch brute_force_projection(const QMatrix& t, std::size_t starts, std::uint64_t seed) {
  const CommutantBasis comm = self_adjoint_commutant(t);
  return summarize(run_search(comm.basis, QMatrix(t.rows(), t.cols()), starts, seed));
}

bool brute_force_complex_idempotent(const CMatrix& s, std::size_t starts, std::uint64_t seed) {
  const Eigen::Index n = s.rows();
  // Complex null space of X -> X S - S X, split into a real basis {B, iB}.
  CMatrix m(n * n, n * n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) {
      CMatrix e = CMatrix::Zero(n, n);
      e(r, c) = 1.0;
      const CMatrix img = e * s - s * e;
      m.col(c * n + r) = Eigen::Map<const Eigen::VectorXcd>(img.data(), n * n);
    }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, sv(0));
  std::vector<CMatrix> basis;
  for (Eigen::Index k = 0; k < n * n; ++k)
    if (k >= sv.size() || sv(k) <= cutoff) {
      const Eigen::VectorXcd col = svd.matrixV().col(k);
      const CMatrix b = Eigen::Map<const CMatrix>(col.data(), n, n);
      basis.push_back(b);
      basis.push_back(cd{0.0, 1.0} * b);
    }
  return summarize(run_search(basis, CMatrix(CMatrix::Zero(n, n)), starts, seed)).found;
}

namespace {

QMatrix upper_bidiagonal(const std::vector<Quaternion>& diag, double super = 1.0) {
  QMatrix m = QMatrix::diagonal(diag);
  for (std::size_t r = 0; r + 1 < diag.size(); ++r) m(r, r + 1) = super;
  return m;
}

}  // namespace

std::vector<SuiteCase> irreducibility_suite(std::uint64_t seed, std::size_t max_n, std::size_t randoms) {
  const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  const Quaternion one_i = 1.0 + i;
  std::vector<SuiteCase> out{
      {"scalar 2", QMatrix::diagonal(std::vector<Quaternion>{2.0})},
      {"scalar 1+i", QMatrix::diagonal(std::vector<Quaternion>{one_i})},
  };
  if (max_n >= 2) {
    QMatrix mixed = QMatrix::diagonal(std::vector<Quaternion>{one_i, 1.0 + j});
    mixed(0, 1) = 1.0;
    std::vector<SuiteCase> two{
        {"diag(1,2)", QMatrix::diagonal(std::vector<Quaternion>{1.0, 2.0})},
        {"diag(1,1)", QMatrix::identity(2)},
        {"diag(i,3)", QMatrix::diagonal(std::vector<Quaternion>{i, 3.0})},
        {"diag(i,j)", QMatrix::diagonal(std::vector<Quaternion>{i, j})},
        {"diag(1+i,1-i)", QMatrix::diagonal(std::vector<Quaternion>{one_i, one_i.conj()})},
        {"J2(0)", upper_bidiagonal({0.0, 0.0})},
        {"J2(1)", upper_bidiagonal({1.0, 1.0})},
        {"J2(1+i)", upper_bidiagonal({one_i, one_i})},
        {"J2(2j)", upper_bidiagonal({2.0 * j, 2.0 * j})},
        {"[[1+i,1],[0,1+j]]", mixed},
    };
    out.insert(out.end(), two.begin(), two.end());
  }
  if (max_n >= 3) {
    QMatrix j2_plus = upper_bidiagonal({one_i, one_i, one_i});
    j2_plus(1, 2) = 0.0;
    QMatrix j2_real = upper_bidiagonal({1.0, 1.0, 2.0});
    j2_real(1, 2) = 0.0;
    std::vector<SuiteCase> three{
        {"diag(1,2,3)", QMatrix::diagonal(std::vector<Quaternion>{1.0, 2.0, 3.0})},
        {"diag(1,1,2)", QMatrix::diagonal(std::vector<Quaternion>{1.0, 1.0, 2.0})},
        {"diag(i,j,k)", QMatrix::diagonal(std::vector<Quaternion>{i, j, k})},
        {"J3(0)", upper_bidiagonal({0.0, 0.0, 0.0})},
        {"J3(1+i)", upper_bidiagonal({one_i, one_i, one_i})},
        {"J2(1+i)+(1+i)", j2_plus},
        {"J2(1)+(2)", j2_real},
        {"bidiag(i,j,k)", upper_bidiagonal({i, j, k})},
    };
    out.insert(out.end(), three.begin(), three.end());
  }
  Rng rng(seed);
  for (std::size_t r = 0; r < randoms; ++r) {
    const std::size_t n = 1 + r % max_n;
    out.push_back({"random " + std::to_string(n) + "x" + std::to_string(n) + " #" + std::to_string(r),
                   random_qmatrix(rng, n, n)});
  }
  return out;
}

std::vector<ComplexSuiteCase> complex_suite(std::uint64_t seed, std::size_t max_n, std::size_t randoms) {
  const cd l{2.0, 1.0};
  auto jordan = [](std::vector<cd> d, std::vector<bool> links) {
    const auto n = static_cast<Eigen::Index>(d.size());
    CMatrix m = CMatrix::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) m(r, r) = d[static_cast<std::size_t>(r)];
    for (Eigen::Index r = 0; r + 1 < n; ++r)
      if (links[static_cast<std::size_t>(r)]) m(r, r + 1) = 1.0;
    return m;
  };
  std::vector<ComplexSuiteCase> out{{"scalar 1+i", jordan({{1.0, 1.0}}, {})}};
  if (max_n >= 2) {
    out.push_back({"J2(2+i)", jordan({l, l}, {true})});
    out.push_back({"diag(1,2)", jordan({1.0, 2.0}, {false})});
    out.push_back({"diag(2+i,2-i)", jordan({l, std::conj(l)}, {false})});
    out.push_back({"diag(2+i,2+i)", jordan({l, l}, {false})});
    out.push_back({"J2(0)", jordan({0.0, 0.0}, {true})});
    out.push_back({"[[2+i,1],[0,2-i]]", jordan({l, std::conj(l)}, {true})});
  }
  if (max_n >= 3) {
    out.push_back({"J3(1)", jordan({1.0, 1.0, 1.0}, {true, true})});
    out.push_back({"J2(1)+(1)", jordan({1.0, 1.0, 1.0}, {true, false})});
    out.push_back({"J2(2+i)+(2-i)", jordan({l, l, std::conj(l)}, {true, false})});
    out.push_back({"diag(1,2,3)", jordan({1.0, 2.0, 3.0}, {false, false})});
  }
  Rng rng(seed);
  std::normal_distribution<double> g;
  for (std::size_t r = 0; r < randoms; ++r) {
    const auto n = static_cast<Eigen::Index>(1 + r % max_n);
    CMatrix m(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        const double re = g(rng), im = g(rng);
        m(a, b) = {re, im};
      }
    out.push_back({"random " + std::to_string(n) + "x" + std::to_string(n) + " #" + std::to_string(r), m});
  }
  return out;
}

}  // namespace quatcalc::oracles
