#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quatcalc/quaternion.hpp"

namespace quatcalc {

using QVector = std::vector<Quaternion>;

/// Dense quaternionic matrix acting by left multiplication on column vectors
/// of the right H-module H^n: (T v)_r = sum_c T_rc v_c, and T(v q) = (T v) q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::size_t rows, std::size_t cols, std::vector<Quaternion> data);

  static QMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static QMatrix identity(std::size_t n);
  static QMatrix scalar(std::size_t n, const Quaternion& q);
  static QMatrix diagonal(std::span<const Quaternion> d);
  /// Embeds a complex matrix entrywise into the slice C_m.
  static QMatrix from_complex(const Eigen::MatrixXcd& m, const ImaginaryUnit& unit = ImaginaryUnit::i());

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Quaternion> data() const { return data_; }

  QMatrix adjoint() const;
  QVector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Quaternion> v);

  /// Largest entry modulus.
  double max_abs() const;
  /// sqrt(sum |T_rc|^2).
  double frobenius_norm() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(double s);

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator-(const QMatrix& a);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(QMatrix a, double s);
QMatrix operator*(double s, QMatrix a);
/// Left scalar action (q . T)_rc = q T_rc.
QMatrix operator*(const Quaternion& q, const QMatrix& a);
/// Right scalar action (T . q)_rc = T_rc q.
QMatrix operator*(const QMatrix& a, const Quaternion& q);

QVector apply(const QMatrix& t, std::span<const Quaternion> v);
QVector scale_right(std::span<const Quaternion> v, const Quaternion& q);
/// <x, y> = sum conj(x_r) y_r.
Quaternion inner(std::span<const Quaternion> x, std::span<const Quaternion> y);
double norm(std::span<const Quaternion> v);

/// Complex adjoint representation.
using CMatrix = Eigen::MatrixXcd;

/// chi(A + B j) = [[A, B], [-conj(B), conj(A)]] with A, B complex (in C_i).
CMatrix chi(const QMatrix& t);

/// Inverse of chi. Throws ValidationError unless the blocks of m satisfy the
/// compatibility relation of the image of chi within tol * max(1, max|m|).
QMatrix chi_inv(const CMatrix& m, double tol = 1e-12);

/// Orthogonal projection onto the image of chi followed by chi_inv. Used for
/// results of complex decompositions that are in the image up to rounding.
QMatrix chi_inv_nearest(const CMatrix& m);

/// Quaternion vector v = a + b j  <->  first column [a; -conj(b)] of chi(v).
Eigen::VectorXcd to_complex_column(std::span<const Quaternion> v);
QVector from_complex_column(const Eigen::VectorXcd& c);

/// Operator norm sup{|T x| : |x| <= 1} (largest singular value of chi(T)).
double op_norm(const QMatrix& t);

/// Quaternionic rank: half the numerical rank of chi(T); singular values
/// above rel_tol * sigma_max count.
std::size_t rank(const QMatrix& t, double rel_tol = 1e-10);

/// ||T*T - TT*|| / max(||T||^2, tiny).
double normality_defect(const QMatrix& t);

/// Greedy quaternionic Gram-Schmidt over candidate complex columns (each is
/// mapped through from_complex_column). Candidates whose residual after
/// projection falls below keep_tol are skipped. Stops after max_vectors.
QMatrix quaternionic_basis(const CMatrix& candidates, std::size_t max_vectors, double keep_tol = 0.5);

/// Orthonormal basis (columns) of the range of T, ordered by decreasing
/// singular value of chi(T).
QMatrix range_basis(const QMatrix& t, double rel_tol = 1e-10);

/// Unitary diagonalization of a normal matrix: T = U diag(values) U* with
/// every value in C_i and Im >= 0 (up to rounding).
struct NormalEigen {
  QMatrix vectors;
  std::vector<std::complex<double>> values;
};
NormalEigen normal_eigen(const QMatrix& t);

/// Positive square root of a positive matrix. Throws DomainError if p is not
/// self-adjoint or has eigenvalues below -clip_tol * ||p||.
QMatrix positive_sqrt(const QMatrix& p, double clip_tol = 1e-12);

/// |T| = (T*T)^{1/2}, computed from the SVD of chi(T).
QMatrix modulus(const QMatrix& t);

struct PolarDecomposition {
  QMatrix partial_isometry;  ///< W0, with N(W0) = N(T)
  QMatrix modulus;           ///< |T|
  std::size_t rank = 0;      ///< quaternionic rank of T
};

/// T = W0 |T| with N(T) = N(W0). Singular values of chi(T) at or below
/// rank_tol * sigma_max are mapped to 0 in W0.
PolarDecomposition polar(const QMatrix& t, double rank_tol = 1e-10);

/// Anti self-adjoint unitary J (J* = -J, J*J = I).
class AntiSelfAdjointUnitary {
 public:
  /// Throws ValidationError if the invariants fail by more than tol.
  explicit AntiSelfAdjointUnitary(QMatrix j, double tol = 1e-10);
  /// J = diag(m, ..., m).
  static AntiSelfAdjointUnitary scalar(std::size_t n, const ImaginaryUnit& m = ImaginaryUnit::i());

  const QMatrix& matrix() const { return j_; }
  std::size_t size() const { return j_.rows(); }

 private:
  QMatrix j_;
};

struct CartesianDecomposition {
  QMatrix real_part;        ///< A = (T + T*) / 2
  QMatrix imag_modulus;     ///< B = |T - T*|
  QMatrix j;                ///< anti self-adjoint unitary, T = A + J B / 2
  std::size_t kernel_dim = 0;  ///< quaternionic dimension of N(T - T*)
  /// J on N(T - T*) is not determined by T; this records the choice made.
  std::string kernel_convention;
};

/// Cartesian decomposition of a normal matrix. Throws DomainError if
/// ||T*T - TT*|| > normal_tol * ||T||^2.
CartesianDecomposition cartesian(const QMatrix& t, double normal_tol = 1e-10);

struct SliceParts {
  QVector plus;   ///< J x+ = x+ m
  QVector minus;  ///< J x- = -x- m
};

/// x+- = (x -+ J x m) / 2.
SliceParts slice_split(std::span<const Quaternion> x, const AntiSelfAdjointUnitary& j,
                       const ImaginaryUnit& m = ImaginaryUnit::i());

/// Orthonormal basis (columns E, J E = E i) of the slice space H+^{Ji}.
QMatrix plus_basis(const AntiSelfAdjointUnitary& j);

/// Unique quaternionic extension of a C_i-linear operator given by its matrix
/// in the basis E of H+^{Ji}: T~ = E Tp E*. The basis must be n x n,
/// orthonormal and satisfy J E = E i (ValidationError otherwise).
QMatrix extend(const CMatrix& tp, const AntiSelfAdjointUnitary& j, const QMatrix& basis);
QMatrix extend(const CMatrix& tp, const AntiSelfAdjointUnitary& j);

/// Inverse of extend for V with J V = V J (ValidationError otherwise).
CMatrix restrict_to_plus(const QMatrix& v, const AntiSelfAdjointUnitary& j, const QMatrix& basis);
CMatrix restrict_to_plus(const QMatrix& v, const AntiSelfAdjointUnitary& j);

/// Largest singular value of a complex matrix.
double complex_norm(const CMatrix& m);

}  // namespace quatcalc
