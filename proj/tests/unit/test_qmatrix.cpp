#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "quatcalc/error.hpp"
#include "quatcalc/oracles.hpp"
#include "quatcalc/qmatrix.hpp"

using namespace quatcalc;
using testing::diag;
using testing::q;

TEST_CASE("chi of the scalar blocks") {
  const CMatrix c = chi(QMatrix::scalar(1, Quaternion::j()));
  CHECK(c(0, 1) == std::complex<double>(1, 0));
  CHECK(c(1, 0) == std::complex<double>(-1, 0));
  CHECK(std::abs(c(0, 0)) == 0.0);
  const CMatrix ci = chi(QMatrix::scalar(1, Quaternion::i()));
  CHECK(ci(0, 0) == std::complex<double>(0, 1));
  CHECK(ci(1, 1) == std::complex<double>(0, -1));
}

TEST_CASE("products agree with the quaternion triple loop") {
  Rng rng(4);
  for (std::size_t n : {3u, 17u, 70u}) {
    const QMatrix a = random_qmatrix(rng, n, n + 1), b = random_qmatrix(rng, n + 1, n);
    const QMatrix ref = testing::naive_product(a, b);
    CHECK((a * b - ref).max_abs() <= 1e-12 * std::sqrt(static_cast<double>(n)));
    CHECK((chi(a * b) - chi(a) * chi(b)).cwiseAbs().maxCoeff() <= 1e-12 * std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("scalar actions") {
  Rng rng(5);
  const QMatrix t = random_qmatrix(rng, 3, 3);
  const Quaternion s = random_quaternion(rng);
  CHECK((s * t - QMatrix::scalar(3, s) * t).max_abs() <= 1e-14);
  CHECK((t * s - t * QMatrix::scalar(3, s)).max_abs() <= 1e-14);
  const QVector v = t.column(1);
  const QVector tv = quatcalc::apply(t, scale_right(v, s));
  const QVector tvs = scale_right(quatcalc::apply(t, v), s);
  for (std::size_t r = 0; r < 3; ++r) CHECK((tv[r] - tvs[r]).norm() <= 1e-13);
}

TEST_CASE("complex column encoding is compatible with chi") {
  Rng rng(6);
  const QMatrix t = random_qmatrix(rng, 4, 4);
  const QVector v = random_qmatrix(rng, 4, 1).column(0);
  const QVector back = from_complex_column(to_complex_column(v));
  for (std::size_t r = 0; r < 4; ++r) CHECK(back[r] == v[r]);
  const Eigen::VectorXcd lhs = chi(t) * to_complex_column(v);
  CHECK((lhs - to_complex_column(quatcalc::apply(t, v))).norm() <= 1e-13);
}

TEST_CASE("chi_inv rejects matrices outside the image") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(1, 1) = 2.0;
  CHECK_THROWS_AS(chi_inv(m), ValidationError);
  const QMatrix t = chi_inv_nearest(m);
  CHECK(t(0, 0).w == doctest::Approx(1.5));
}

TEST_CASE("operator norm") {
  CHECK(op_norm(diag({Quaternion::j(), 3.0})) == doctest::Approx(3.0));
  Rng rng(7);
  CHECK(op_norm(random_unitary(rng, 5)) == doctest::Approx(1.0).epsilon(1e-13));
  for (int t = 0; t < 5; ++t) {
    const QMatrix a = random_qmatrix(rng, 6, 4);
    CHECK(op_norm(a) == doctest::Approx(oracles::power_iteration_norm(a)).epsilon(1e-10));
  }
  // Above the dense threshold the norm goes through an iterative solver.
  const QMatrix big = random_qmatrix(rng, 300, 300);
  const double dense = chi(big).bdcSvd().singularValues()(0);
  CHECK(op_norm(big) == doctest::Approx(dense).epsilon(1e-13));
}

TEST_CASE("rank and range") {
  Rng rng(8);
  CHECK(rank(random_low_rank(rng, 5, 2)) == 2);
  CHECK(rank(QMatrix::zeros(3, 3)) == 0);
  CHECK(rank(random_qmatrix(rng, 4, 4)) == 4);
  const QMatrix b = range_basis(random_low_rank(rng, 6, 3));
  CHECK(b.cols() == 3);
  CHECK(op_norm(b.adjoint() * b - QMatrix::identity(3)) <= 1e-13);
}

TEST_CASE("normal eigendecomposition") {
  Rng rng(9);
  const QMatrix t = testing::normal_with(rng, {{1, 2}, {-1, 0.5}, {0.3, 0}});
  const NormalEigen ne = normal_eigen(t);
  std::vector<Quaternion> d;
  for (auto v : ne.values) {
    CHECK(v.imag() >= -1e-12);
    d.push_back(to_slice(v));
  }
  CHECK(op_norm(ne.vectors * QMatrix::diagonal(d) * ne.vectors.adjoint() - t) <= 1e-12);
  CHECK(op_norm(ne.vectors.adjoint() * ne.vectors - QMatrix::identity(3)) <= 1e-12);
}

TEST_CASE("positive square root and modulus") {
  Rng rng(10);
  const QMatrix a = random_qmatrix(rng, 4, 4);
  const QMatrix p = a.adjoint() * a;
  const QMatrix r = positive_sqrt(p);
  CHECK(op_norm(r * r - p) <= 1e-12 * op_norm(p));
  CHECK(op_norm(r - r.adjoint()) <= 1e-13);
  CHECK(op_norm(modulus(a) - r) <= 1e-11);
  CHECK(op_norm(modulus(a) - oracles::modulus_from_gram(a)) <= 1e-11);
  CHECK_THROWS_AS(positive_sqrt(a), DomainError);
  CHECK_THROWS_AS(positive_sqrt(-1.0 * p), DomainError);
}

TEST_CASE("polar decomposition, full and deficient rank") {
  Rng rng(11);
  for (std::size_t r : {4u, 3u, 1u}) {
    const QMatrix t = r == 4 ? random_qmatrix(rng, 4, 4) : random_low_rank(rng, 4, r);
    const PolarDecomposition pd = polar(t);
    CHECK(op_norm(t - pd.partial_isometry * pd.modulus) <= 1e-10 * op_norm(t));
    CHECK(pd.rank == r);
    CHECK(rank(pd.partial_isometry) == r);
    const QMatrix wsw = pd.partial_isometry.adjoint() * pd.partial_isometry;
    CHECK(op_norm(wsw * wsw - wsw) <= 1e-12);
  }
  const PolarDecomposition z = polar(QMatrix::zeros(3, 3));
  CHECK(z.rank == 0);
  CHECK(z.partial_isometry.max_abs() == 0.0);
}

TEST_CASE("anti self-adjoint unitary validation") {
  CHECK_NOTHROW(AntiSelfAdjointUnitary(diag({Quaternion::i(), Quaternion::k()})));
  CHECK_THROWS_AS(AntiSelfAdjointUnitary(diag({Quaternion::i(), 2.0 * Quaternion::k()})), ValidationError);
  CHECK_THROWS_AS(AntiSelfAdjointUnitary(QMatrix::identity(2)), ValidationError);
}

TEST_CASE("cartesian decomposition of diag(i, 3)") {
  const CartesianDecomposition cd = cartesian(diag({Quaternion::i(), 3.0}));
  CHECK(op_norm(cd.real_part - diag({0.0, 3.0})) <= 1e-14);
  CHECK(op_norm(cd.imag_modulus - diag({0.0, 0.0}) - diag({2.0, 0.0})) <= 1e-14);
  CHECK((cd.j(0, 0) - Quaternion::i()).norm() <= 1e-14);
  CHECK(cd.kernel_dim == 1);
  CHECK_FALSE(cd.kernel_convention.empty());
}

TEST_CASE("cartesian decomposition invariants on random normal matrices") {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    const QMatrix m = testing::normal_with(rng, {{1, 1}, {-0.5, 2}, {0, 0.3}, {2, t % 2 ? 0.0 : 1.5}});
    const CartesianDecomposition cd = cartesian(m);
    const QMatrix& j = cd.j;
    CHECK(op_norm(cd.real_part + j * cd.imag_modulus * 0.5 - m) <= 1e-9 * op_norm(m));
    CHECK(op_norm(j.adjoint() + j) <= 1e-10);
    CHECK(op_norm(j.adjoint() * j - QMatrix::identity(4)) <= 1e-10);
    CHECK(op_norm(j * m - m * j) <= 1e-10);
    CHECK(op_norm(j * m.adjoint() - m.adjoint() * j) <= 1e-10);
  }
}

TEST_CASE("cartesian decomposition rejects non-normal input") {
  const QMatrix t(2, 2, {1.0, 1.0, 0.0, 1.0});
  CHECK_THROWS_AS(cartesian(t), DomainError);
}

TEST_CASE("slice split and plus basis") {
  Rng rng(13);
  const QMatrix u = random_unitary(rng, 3);
  const AntiSelfAdjointUnitary j(u * QMatrix::scalar(3, Quaternion::i()) * u.adjoint(), 1e-10);
  const QVector x = random_qmatrix(rng, 3, 1).column(0);
  const SliceParts sp = slice_split(x, j);
  const QVector jp = quatcalc::apply(j.matrix(), sp.plus), jm = quatcalc::apply(j.matrix(), sp.minus);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK((sp.plus[r] + sp.minus[r] - x[r]).norm() <= 1e-14);
    CHECK((jp[r] - sp.plus[r] * Quaternion::i()).norm() <= 1e-13);
    CHECK((jm[r] + sp.minus[r] * Quaternion::i()).norm() <= 1e-13);
  }
  const QMatrix e = plus_basis(j);
  CHECK(op_norm(e.adjoint() * e - QMatrix::identity(3)) <= 1e-12);
  CHECK(op_norm(j.matrix() * e - e * Quaternion::i()) <= 1e-12);
}

TEST_CASE("extension preserves norms and inverts restriction") {
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + t % 3;
    const QMatrix u = random_unitary(rng, n);
    const AntiSelfAdjointUnitary j(u * QMatrix::scalar(n, Quaternion::i()) * u.adjoint(), 1e-10);
    const CMatrix tp = CMatrix::Random(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const QMatrix e = plus_basis(j);
    const QMatrix tt = extend(tp, j, e);
    CHECK(std::abs(op_norm(tt) - complex_norm(tp)) <= 1e-12);
    CHECK(op_norm(j.matrix() * tt - tt * j.matrix()) <= 1e-12);
    CHECK(complex_norm(restrict_to_plus(tt, j, e) - tp) <= 1e-12);
    CHECK(op_norm(extend(restrict_to_plus(tt, j), j) - tt) <= 1e-12);
  }
}

TEST_CASE("extension input validation") {
  const AntiSelfAdjointUnitary j = AntiSelfAdjointUnitary::scalar(2);
  CHECK_THROWS_AS(extend(CMatrix::Identity(2, 2), j, QMatrix::identity(2) * 2.0), ValidationError);
  CHECK_THROWS_AS(extend(CMatrix::Identity(2, 2), j, QMatrix::scalar(2, Quaternion::j())), ValidationError);
  CHECK_THROWS_AS(restrict_to_plus(diag({Quaternion::j(), 1.0}), j), ValidationError);
  // With J = i I and the standard basis the extension is the entrywise embedding.
  CMatrix c(2, 2);
  c << std::complex<double>(1, 2), 3.0, 0.0, std::complex<double>(0, -1);
  CHECK(op_norm(extend(c, j, QMatrix::identity(2)) - QMatrix::from_complex(c)) <= 1e-14);
}
