#include <doctest.h>

#include <algorithm>
#include <vector>

#include "helpers.hpp"
#include "quatcalc/error.hpp"
#include "quatcalc/spectrum.hpp"

using namespace quatcalc;
using testing::diag;
using testing::q;

namespace {

/// Upper triangular matrix with the given diagonal and Gaussian strict upper part.
QMatrix upper_triangular(Rng& rng, const std::vector<Quaternion>& d) {
  const std::size_t n = d.size();
  QMatrix t = random_qmatrix(rng, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < r; ++c) t(r, c) = Quaternion();
    t(r, r) = d[r];
  }
  return t;
}

std::vector<Sphere> spheres_of(const std::vector<Quaternion>& d) {
  std::vector<Sphere> out;
  for (const auto& x : d) out.push_back(sphere_of(x));
  return out;
}

}  // namespace

TEST_CASE("spectrum of diag(j, 3)") {
  const SphericalSpectrum s = spherical_spectrum(diag({Quaternion::j(), 3.0}));
  REQUIRE(s.size() == 2);
  CHECK(s.spheres[0].re == doctest::Approx(0.0));
  CHECK(s.spheres[0].rad == doctest::Approx(1.0));
  CHECK(s.spheres[1].re == doctest::Approx(3.0));
  CHECK(s.spheres[1].rad == 0.0);
  CHECK(s.multiplicities == std::vector<std::size_t>{1, 1});
  for (double v : s.delta_sigma_min) CHECK(v <= 1e-12);
}

TEST_CASE("identity and scalar matrices have one sphere") {
  const SphericalSpectrum s = spherical_spectrum(QMatrix::identity(4));
  REQUIRE(s.size() == 1);
  CHECK(s.spheres[0] == Sphere{1, 0});
  CHECK(s.multiplicities[0] == 4);
  const SphericalSpectrum k = spherical_spectrum(QMatrix::scalar(3, q(1, 0, 3, 4)));
  REQUIRE(k.size() == 1);
  CHECK(k.spheres[0].rad == doctest::Approx(5.0));
}

TEST_CASE("triangular matrices: spheres of the diagonal entries") {
  Rng rng(20);
  for (int t = 0; t < 20; ++t) {
    std::vector<Quaternion> d;
    for (int k = 0; k < 4; ++k) d.push_back(random_quaternion(rng) * 2.0);
    const QMatrix m = upper_triangular(rng, d);
    const SphericalSpectrum s = spherical_spectrum(m);
    const auto expect = spheres_of(d);
    CHECK(hausdorff_distance(s.spheres, expect) <= 1e-9);
  }
}

TEST_CASE("similarity and adjoint invariance") {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const QMatrix m = random_qmatrix(rng, 5, 5);
    const QMatrix s = random_invertible(rng, 5);
    const auto a = spherical_spectrum(m).spheres;
    CHECK(hausdorff_distance(a, spherical_spectrum(testing::inverse(s) * m * s).spheres) <= 1e-9);
    CHECK(hausdorff_distance(a, spherical_spectrum(m.adjoint()).spheres) <= 1e-9);
  }
}

TEST_CASE("extension spectrum is the circularized complex spectrum") {
  Rng rng(22);
  const CMatrix tp = CMatrix::Random(4, 4);
  const AntiSelfAdjointUnitary j = AntiSelfAdjointUnitary::scalar(4, ImaginaryUnit(0, 1, 1));
  const QMatrix tt = extend(tp, j);
  CHECK(hausdorff_distance(spherical_spectrum(tt).spheres, complex_spectrum_spheres(tp).spheres) <= 1e-9);
}

TEST_CASE("Jordan structure") {
  const Quaternion l = q(1, 1);
  SUBCASE("nonreal 2x2 block") {
    const auto ps = point_spectrum(QMatrix(2, 2, {l, 1.0, 0.0, l}));
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].multiplicity == 2);
    CHECK(ps[0].kernel_dim == 1);
    CHECK(ps[0].eigen_dim == 1);
    CHECK(ps[0].jordan.block_sizes == std::vector<std::size_t>{2});
    CHECK(ps[0].jordan.determinate);
  }
  SUBCASE("real blocks are halved") {
    const auto js = jordan_structure(QMatrix(2, 2, {1.0, 1.0, 0.0, 1.0}), {1, 0}, 2);
    CHECK(js.block_sizes == std::vector<std::size_t>{2});
    const auto id = jordan_structure(QMatrix::identity(2), {1, 0}, 2);
    CHECK(id.block_sizes == std::vector<std::size_t>{1, 1});
  }
  SUBCASE("mixed blocks") {
    QMatrix t = QMatrix::identity(3) * 2.0;
    t(0, 1) = 1.0;
    const auto ps = point_spectrum(t);
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].jordan.block_sizes == std::vector<std::size_t>{2, 1});
    CHECK(ps[0].eigen_dim == 2);
  }
  SUBCASE("nilpotent block: Delta_0(T) = T^2 vanishes") {
    const auto ps = point_spectrum(QMatrix(2, 2, {0.0, 1.0, 0.0, 0.0}));
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].kernel_dim == 2);
    CHECK(ps[0].eigen_dim == 1);
  }
  SUBCASE("borderline ranks are indeterminate") {
    const auto js = jordan_structure(QMatrix(2, 2, {0.0, 1e-6, 0.0, 0.0}), {0, 0}, 2);
    CHECK_FALSE(js.determinate);
    CHECK(js.margin < 1.0);
  }
}

TEST_CASE("S-resolvent of a real scalar matrix is (s - a)^-1") {
  const double a = 2.0;
  const QMatrix t = QMatrix::identity(3) * a;
  Rng rng(23);
  for (int k = 0; k < 10; ++k) {
    const Quaternion s = random_quaternion(rng);
    const Quaternion expect = (s - q(a)).inverse();
    const SResolventSample r = s_resolvent(t, s);
    CHECK(op_norm(r.left - QMatrix::scalar(3, expect)) <= 1e-13);
    CHECK(op_norm(r.right - QMatrix::scalar(3, expect)) <= 1e-13);
  }
}

TEST_CASE("S-resolvent identities and equation") {
  Rng rng(24);
  for (int k = 0; k < 10; ++k) {
    const QMatrix t = random_qmatrix(rng, 4, 4);
    const Quaternion s = 2.0 * random_quaternion(rng), p = 2.0 * random_quaternion(rng);
    const SResolventSample rs = s_resolvent(t, s), rp = s_resolvent(t, p);
    CHECK(left_identity_residual(t, rs) <= 1e-12);
    CHECK(right_identity_residual(t, rs) <= 1e-12);
    CHECK(s_resolvent_equation_residual(t, rs, rp) <= 1e-10);
  }
}

TEST_CASE("S-resolvent refuses points of the spectrum") {
  const QMatrix t = diag({Quaternion::i(), 3.0});
  CHECK_THROWS_AS(s_resolvent(t, Quaternion::i()), SingularityError);
  // j lies on the same sphere as i.
  CHECK_THROWS_AS(s_resolvent(t, Quaternion::j()), SingularityError);
  CHECK_THROWS_AS(s_resolvent(t, q(3)), SingularityError);
  CHECK_NOTHROW(s_resolvent(t, q(1, 1)));
  CHECK_THROWS_AS(spherical_spectrum(QMatrix(2, 3)), ValidationError);
}
