#include "quatcalc/qmatrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "quatcalc/error.hpp"

namespace quatcalc {

namespace {

using cd = std::complex<double>;

// Above this many scalar multiply-adds a product is routed through chi and
// Eigen's blocked GEMM.
constexpr std::size_t kDirectProductLimit = 64 * 64 * 64;

void require_same_shape(const QMatrix& a, const QMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError(std::string("shape mismatch in ") + op);
}

Eigen::VectorXd singular_values(const CMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues();
}

/// Largest eigenvalue of M^H M by Lanczos with full reorthogonalization.
/// Empty unless the Ritz residual certifies relative accuracy 1e-14.
std::optional<double> lanczos_gram_top(const CMatrix& m, Eigen::Index max_steps = 300) {
  const Eigen::Index n = m.cols();
  const Eigen::Index kmax = std::min(max_steps, n);
  CMatrix v(n, kmax + 1);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> g;
  for (Eigen::Index r = 0; r < n; ++r) v(r, 0) = {g(rng), g(rng)};
  v.col(0).normalize();
  std::vector<double> alpha, beta;
  for (Eigen::Index k = 0; k < kmax; ++k) {
    Eigen::VectorXcd w = m.adjoint() * (m * v.col(k));
    const double a = v.col(k).dot(w).real();
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) {
      const auto basis = v.leftCols(k + 1);
      w -= basis * (basis.adjoint() * w);
    }
    const double b = w.norm();
    if ((k + 1) % 8 == 0 || k + 1 == kmax || b == 0.0) {
      const auto dim = static_cast<Eigen::Index>(alpha.size());
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        tri(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < dim) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
      const double theta = es.eigenvalues()(dim - 1);
      const double resid = b * std::abs(es.eigenvectors()(dim - 1, dim - 1));
      if (theta > 0.0 && resid <= 1e-14 * theta) return theta;
      if (b <= 1e-300) return theta;
    }
    beta.push_back(b);
    v.col(k + 1) = w / b;
  }
  return std::nullopt;
}

double largest_singular_value(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (std::min(m.rows(), m.cols()) <= 512) {
    const auto s = singular_values(m);
    return s.size() ? s(0) : 0.0;
  }
  // Large operators: the top eigenvalue of the Gram matrix is relatively
  // accurate to rounding. Lanczos first, dense eigensolver as fallback.
  if (const auto top = lanczos_gram_top(m)) return std::sqrt(std::max(0.0, *top));
  const CMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Quaternion> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw ValidationError("QMatrix data size does not match shape");
}

QMatrix QMatrix::identity(std::size_t n) { return scalar(n, Quaternion::one()); }

QMatrix QMatrix::scalar(std::size_t n, const Quaternion& q) {
  QMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) m(r, r) = q;
  return m;
}

QMatrix QMatrix::diagonal(std::span<const Quaternion> d) {
  QMatrix m(d.size(), d.size());
  for (std::size_t r = 0; r < d.size(); ++r) m(r, r) = d[r];
  return m;
}

QMatrix QMatrix::from_complex(const Eigen::MatrixXcd& c, const ImaginaryUnit& unit) {
  QMatrix m(static_cast<std::size_t>(c.rows()), static_cast<std::size_t>(c.cols()));
  for (Eigen::Index r = 0; r < c.rows(); ++r)
    for (Eigen::Index k = 0; k < c.cols(); ++k) m(r, k) = to_slice(c(r, k), unit);
  return m;
}

QMatrix QMatrix::adjoint() const {
  QMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c).conj();
  return out;
}

QVector QMatrix::column(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void QMatrix::set_column(std::size_t c, std::span<const Quaternion> v) {
  if (v.size() != rows_) throw ValidationError("column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

double QMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& q : data_) m = std::max(m, q.norm());
  return m;
}

double QMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& q : data_) s += q.norm2();
  return std::sqrt(s);
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  require_same_shape(*this, o, "+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  require_same_shape(*this, o, "-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  for (auto& q : data_) q *= s;
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator-(const QMatrix& a) { return a * -1.0; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(double s, QMatrix a) { return a *= s; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("shape mismatch in *");
  if (a.rows() * a.cols() * b.cols() > kDirectProductLimit) return chi_inv_nearest(chi(a) * chi(b));
  QMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quaternion ark = a(r, k);
      if (ark == Quaternion{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

QMatrix operator*(const Quaternion& q, const QMatrix& a) {
  QMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = q * a(r, c);
  return out;
}

QMatrix operator*(const QMatrix& a, const Quaternion& q) {
  QMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) * q;
  return out;
}

QVector apply(const QMatrix& t, std::span<const Quaternion> v) {
  if (v.size() != t.cols()) throw ValidationError("vector length mismatch");
  QVector out(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.cols(); ++c) out[r] += t(r, c) * v[c];
  return out;
}

QVector scale_right(std::span<const Quaternion> v, const Quaternion& q) {
  QVector out(v.begin(), v.end());
  for (auto& e : out) e = e * q;
  return out;
}

Quaternion inner(std::span<const Quaternion> x, std::span<const Quaternion> y) {
  if (x.size() != y.size()) throw ValidationError("vector length mismatch");
  Quaternion s;
  for (std::size_t r = 0; r < x.size(); ++r) s += x[r].conj() * y[r];
  return s;
}

double norm(std::span<const Quaternion> v) {
  double s = 0.0;
  for (const auto& q : v) s += q.norm2();
  return std::sqrt(s);
}

CMatrix chi(const QMatrix& t) {
  const auto n = static_cast<Eigen::Index>(t.rows());
  const auto m = static_cast<Eigen::Index>(t.cols());
  CMatrix out(2 * n, 2 * m);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < m; ++c) {
      const Quaternion& q = t(r, c);
      const cd a{q.w, q.x};
      const cd b{q.y, q.z};
      out(r, c) = a;
      out(r, m + c) = b;
      out(n + r, c) = -std::conj(b);
      out(n + r, m + c) = std::conj(a);
    }
  return out;
}

QMatrix chi_inv(const CMatrix& m, double tol) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0) throw ValidationError("chi_inv: dimensions must be even");
  const Eigen::Index n = m.rows() / 2, k = m.cols() / 2;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const auto a = m.topLeftCorner(n, k);
  const auto b = m.topRightCorner(n, k);
  const double defect = std::max((m.bottomRightCorner(n, k) - a.conjugate()).cwiseAbs().maxCoeff(),
                                 (m.bottomLeftCorner(n, k) + b.conjugate()).cwiseAbs().maxCoeff());
  if (n > 0 && k > 0 && defect > tol * scale)
    throw ValidationError("chi_inv: matrix is not in the image of the complex adjoint representation");
  QMatrix out(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < k; ++c)
      out(r, c) = {a(r, c).real(), a(r, c).imag(), b(r, c).real(), b(r, c).imag()};
  return out;
}

QMatrix chi_inv_nearest(const CMatrix& m) {
  const Eigen::Index n = m.rows() / 2, k = m.cols() / 2;
  QMatrix out(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < k; ++c) {
      const cd a = 0.5 * (m(r, c) + std::conj(m(n + r, k + c)));
      const cd b = 0.5 * (m(r, k + c) - std::conj(m(n + r, c)));
      out(r, c) = {a.real(), a.imag(), b.real(), b.imag()};
    }
  return out;
}

Eigen::VectorXcd to_complex_column(std::span<const Quaternion> v) {
  const auto n = static_cast<Eigen::Index>(v.size());
  Eigen::VectorXcd c(2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    c(r) = {v[r].w, v[r].x};
    c(n + r) = -std::conj(cd{v[r].y, v[r].z});
  }
  return c;
}

QVector from_complex_column(const Eigen::VectorXcd& c) {
  const Eigen::Index n = c.size() / 2;
  QVector v(static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < n; ++r) {
    const cd a = c(r);
    const cd b = -std::conj(c(n + r));
    v[r] = {a.real(), a.imag(), b.real(), b.imag()};
  }
  return v;
}

double op_norm(const QMatrix& t) { return largest_singular_value(chi(t)); }

double complex_norm(const CMatrix& m) { return largest_singular_value(m); }

std::size_t rank(const QMatrix& t, double rel_tol) {
  const auto s = singular_values(chi(t));
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++count;
  return (count + 1) / 2;
}

double normality_defect(const QMatrix& t) {
  const QMatrix ta = t.adjoint();
  const double n = op_norm(t);
  if (n == 0.0) return 0.0;
  return op_norm(ta * t - t * ta) / (n * n);
}

QMatrix quaternionic_basis(const CMatrix& candidates, std::size_t max_vectors, double keep_tol) {
  const std::size_t n = static_cast<std::size_t>(candidates.rows() / 2);
  std::vector<QVector> kept;
  for (Eigen::Index c = 0; c < candidates.cols() && kept.size() < max_vectors; ++c) {
    const double cn = candidates.col(c).norm();
    if (cn == 0.0) continue;
    QVector v = from_complex_column(candidates.col(c) / cn);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : kept) {
        const Quaternion coef = inner(u, v);
        for (std::size_t r = 0; r < n; ++r) v[r] -= u[r] * coef;
      }
    const double vn = norm(v);
    if (vn <= keep_tol) continue;
    for (auto& e : v) e *= 1.0 / vn;
    kept.push_back(std::move(v));
  }
  QMatrix out(n, kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) out.set_column(c, kept[c]);
  return out;
}

QMatrix range_basis(const QMatrix& t, double rel_tol) {
  const CMatrix x = chi(t);
  if (x.size() == 0) return QMatrix(t.rows(), 0);
  Eigen::BDCSVD<CMatrix> svd(x, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index count = 0;
  if (s.size() && s(0) > 0.0)
    while (count < s.size() && s(count) > rel_tol * s(0)) ++count;
  return quaternionic_basis(svd.matrixU().leftCols(count), static_cast<std::size_t>((count + 1) / 2));
}

NormalEigen normal_eigen(const QMatrix& t) {
  if (!t.is_square()) throw ValidationError("normal_eigen: matrix must be square");
  const std::size_t n = t.rows();
  NormalEigen out;
  if (n == 0) return out;
  Eigen::ComplexSchur<CMatrix> schur(chi(t));
  const CMatrix& z = schur.matrixU();
  const CMatrix& tri = schur.matrixT();

  // Upper half-plane eigenvectors first; their j-partners (eigenvalue conj)
  // then fall into the span already collected and are skipped.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(z.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return tri(a, a).imag() > tri(b, b).imag();
  });
  CMatrix sorted(z.rows(), z.cols());
  for (std::size_t c = 0; c < order.size(); ++c) sorted.col(static_cast<Eigen::Index>(c)) = z.col(order[c]);
  out.vectors = quaternionic_basis(sorted, n);
  if (out.vectors.cols() != n) throw DomainError("normal_eigen: failed to extract a full eigenbasis");

  const QMatrix d = out.vectors.adjoint() * t * out.vectors;
  out.values.resize(n);
  for (std::size_t r = 0; r < n; ++r) out.values[r] = {d(r, r).w, d(r, r).x};
  return out;
}

QMatrix positive_sqrt(const QMatrix& p, double clip_tol) {
  if (!p.is_square()) throw DomainError("positive_sqrt: matrix must be square");
  const double scale = std::max(1.0, p.max_abs());
  if ((p - p.adjoint()).max_abs() > 1e-10 * scale) throw DomainError("positive_sqrt: matrix is not self-adjoint");
  const QMatrix sym = 0.5 * (p + p.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(chi(sym));
  Eigen::VectorXd lambda = es.eigenvalues();
  const double top = lambda.size() ? lambda.cwiseAbs().maxCoeff() : 0.0;
  if (lambda.size() && lambda.minCoeff() < -clip_tol * std::max(top, 1e-300))
    throw DomainError("positive_sqrt: matrix is indefinite");
  lambda = lambda.cwiseMax(0.0).cwiseSqrt();
  const CMatrix root = es.eigenvectors() * lambda.asDiagonal() * es.eigenvectors().adjoint();
  const QMatrix r = chi_inv_nearest(root);
  return 0.5 * (r + r.adjoint());
}

QMatrix modulus(const QMatrix& t) {
  const CMatrix x = chi(t);
  if (x.size() == 0) return QMatrix(t.cols(), t.cols());
  Eigen::BDCSVD<CMatrix> svd(x, Eigen::ComputeThinV);
  const CMatrix& v = svd.matrixV();
  const CMatrix m = v * svd.singularValues().asDiagonal() * v.adjoint();
  const QMatrix r = chi_inv_nearest(m);
  return 0.5 * (r + r.adjoint());
}

PolarDecomposition polar(const QMatrix& t, double rank_tol) {
  PolarDecomposition out;
  const CMatrix x = chi(t);
  if (x.size() == 0) {
    out.partial_isometry = QMatrix(t.rows(), t.cols());
    out.modulus = QMatrix(t.cols(), t.cols());
    return out;
  }
  Eigen::BDCSVD<CMatrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  Eigen::Index r2 = 0;
  if (s(0) > 0.0)
    while (r2 < s.size() && s(r2) > rank_tol * s(0)) ++r2;
  const CMatrix w = svd.matrixU().leftCols(r2) * svd.matrixV().leftCols(r2).adjoint();
  const CMatrix m = svd.matrixV() * s.asDiagonal() * svd.matrixV().adjoint();
  out.partial_isometry = chi_inv_nearest(w);
  const QMatrix mod = chi_inv_nearest(m);
  out.modulus = 0.5 * (mod + mod.adjoint());
  out.rank = static_cast<std::size_t>((r2 + 1) / 2);
  return out;
}

AntiSelfAdjointUnitary::AntiSelfAdjointUnitary(QMatrix j, double tol) : j_(std::move(j)) {
  if (!j_.is_square()) throw ValidationError("J must be square");
  const QMatrix ja = j_.adjoint();
  if ((ja + j_).max_abs() > tol) throw ValidationError("J is not anti self-adjoint");
  if ((ja * j_ - QMatrix::identity(j_.rows())).max_abs() > tol) throw ValidationError("J is not unitary");
}

AntiSelfAdjointUnitary AntiSelfAdjointUnitary::scalar(std::size_t n, const ImaginaryUnit& m) {
  return AntiSelfAdjointUnitary(QMatrix::scalar(n, m.as_quaternion()));
}

CartesianDecomposition cartesian(const QMatrix& t, double normal_tol) {
  if (!t.is_square()) throw DomainError("cartesian: matrix must be square");
  const QMatrix ta = t.adjoint();
  const double tn = op_norm(t);
  if (op_norm(ta * t - t * ta) > normal_tol * std::max(tn * tn, 1e-300) && tn > 0.0)
    throw DomainError("cartesian: matrix is not normal");

  CartesianDecomposition out;
  out.real_part = 0.5 * (t + ta);
  out.imag_modulus = modulus(t - ta);

  // T = U diag(a + b i) U* with b >= 0, so T - T* = U diag(2 b i) U* and
  // J = U diag(i) U* is its phase wherever b > 0.
  const NormalEigen eig = normal_eigen(t);
  const std::size_t n = t.rows();
  const QMatrix j = eig.vectors * QMatrix::scalar(n, Quaternion::i()) * eig.vectors.adjoint();
  out.j = 0.5 * (j - j.adjoint());
  const double kernel_tol = 1e-10 * std::max(1.0, tn);
  for (const auto& v : eig.values)
    if (std::abs(v.imag()) <= kernel_tol) ++out.kernel_dim;
  out.kernel_convention = "on N(T - T*) J acts as right multiplication by i in the Schur eigenbasis of T";
  return out;
}

SliceParts slice_split(std::span<const Quaternion> x, const AntiSelfAdjointUnitary& j, const ImaginaryUnit& m) {
  const QVector jxm = scale_right(apply(j.matrix(), x), m.as_quaternion());
  SliceParts out{QVector(x.size()), QVector(x.size())};
  for (std::size_t r = 0; r < x.size(); ++r) {
    out.plus[r] = 0.5 * (x[r] - jxm[r]);
    out.minus[r] = 0.5 * (x[r] + jxm[r]);
  }
  return out;
}

QMatrix plus_basis(const AntiSelfAdjointUnitary& j) { return normal_eigen(j.matrix()).vectors; }

namespace {

void validate_plus_basis(const AntiSelfAdjointUnitary& j, const QMatrix& e) {
  const std::size_t n = j.size();
  if (e.rows() != n || e.cols() != n) throw ValidationError("basis must be n x n to span H+^{Ji}");
  if ((e.adjoint() * e - QMatrix::identity(n)).max_abs() > 1e-10)
    throw ValidationError("basis is not orthonormal");
  if ((j.matrix() * e - e * Quaternion::i()).max_abs() > 1e-10)
    throw ValidationError("basis does not lie in H+^{Ji}");
}

}  // namespace

QMatrix extend(const CMatrix& tp, const AntiSelfAdjointUnitary& j, const QMatrix& basis) {
  validate_plus_basis(j, basis);
  if (static_cast<std::size_t>(tp.rows()) != j.size() || static_cast<std::size_t>(tp.cols()) != j.size())
    throw ValidationError("operator dimension does not match H+^{Ji}");
  return basis * QMatrix::from_complex(tp) * basis.adjoint();
}

QMatrix extend(const CMatrix& tp, const AntiSelfAdjointUnitary& j) { return extend(tp, j, plus_basis(j)); }

CMatrix restrict_to_plus(const QMatrix& v, const AntiSelfAdjointUnitary& j, const QMatrix& basis) {
  validate_plus_basis(j, basis);
  const double scale = std::max(1.0, v.max_abs());
  if ((j.matrix() * v - v * j.matrix()).max_abs() > 1e-10 * scale)
    throw ValidationError("operator does not commute with J");
  const QMatrix m = basis.adjoint() * v * basis;
  CMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {m(r, c).w, m(r, c).x};
  return out;
}

CMatrix restrict_to_plus(const QMatrix& v, const AntiSelfAdjointUnitary& j) {
  return restrict_to_plus(v, j, plus_basis(j));
}

}  // namespace quatcalc
