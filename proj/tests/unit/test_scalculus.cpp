#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "quatcalc/error.hpp"
#include "quatcalc/oracles.hpp"
#include "quatcalc/scalculus.hpp"
#include "quatcalc/spectrum.hpp"

using namespace quatcalc;
using testing::diag;
using testing::q;

namespace {

QMatrix three_sphere_normal(Rng& rng, std::vector<Sphere>& spheres) {
  spheres = {{-2.0, 0.3}, {0.1, 0.0}, {2.0, 0.25}};
  const std::vector<std::size_t> mult(3, 2);
  return random_normal(rng, spheres, mult);
}

}  // namespace

TEST_CASE("contour geometry") {
  const Contour c = build_contour({{0, 1}}, {{3, 0}});
  REQUIRE(c.circles.size() == 1);
  const Circle& k = c.circles[0];
  const double r_in = k.radius - k.inner_clearance, r_out = k.radius + k.outer_clearance;
  CHECK(k.radius * k.radius == doctest::Approx(std::max(r_in, r_out / 9.0) * r_out));
  CHECK(k.inner_clearance >= (r_out - r_in) / 4.0 - 1e-12);
  CHECK(k.outer_clearance >= (r_out - r_in) / 4.0 - 1e-12);
  CHECK(c.encloses({0, 1}));
  CHECK_FALSE(c.encloses({3, 0}));
  CHECK(c.nodes == kDefaultNodes);
  CHECK(c.separation == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("contour errors") {
  CHECK_THROWS_AS(build_contour({{0, 1}}, {{0, 1}}), SeparationError);
  CHECK_THROWS_AS(build_contour({}, {{0, 1}}), ValidationError);
  CHECK_THROWS_AS(build_contour({{0, 1}}, {{3, 0}}, ImaginaryUnit::i(), 8), ValidationError);
  // No circle centred on R holds [i] but not [0.5 i].
  CHECK_THROWS_AS(build_contour({{0, 1}}, {{0, 0.5}}), SeparationError);
}

TEST_CASE("quadrature nodes lie on the circle in the chosen slice") {
  const ImaginaryUnit m(0, 1, 1);
  const Contour c = build_contour({{0, 1}}, {{3, 0}}, m, 32);
  const auto nodes = quadrature_nodes(c);
  REQUIRE(nodes.size() == 32);
  const Circle& k = c.circles[0];
  for (const auto& nd : nodes) {
    CHECK((nd.s - q(k.center)).norm() == doctest::Approx(k.radius));
    const Quaternion im = nd.s - q(nd.s.w);
    CHECK(std::abs(im.x) <= 1e-15);
    CHECK(nd.weight.norm() == doctest::Approx(k.radius / 32));
  }
}

TEST_CASE("calculus reproduces polynomials from either side") {
  Rng rng(30);
  for (std::size_t n : {2u, 4u, 5u}) {
    const QMatrix t = random_qmatrix(rng, n, n);
    const Contour c = build_contour(spherical_spectrum(t).spheres, {});
    const SliceFunction f = polynomial_function({2.0, 0.0, -1.0, 0.5});
    const QMatrix expect = QMatrix::identity(n) * 2.0 - t * t + 0.5 * (t * t * t);
    const double scale = op_norm(expect);
    CHECK(op_norm(func_calc(f, Side::left, t, c) - expect) <= 1e-11 * scale);
    CHECK(op_norm(func_calc(f, Side::right, t, c) - expect) <= 1e-11 * scale);
    CHECK(op_norm(func_calc(constant_function(1.0), Side::left, t, c) - QMatrix::identity(n)) <= 1e-12);
    CHECK(op_norm(riesz_projection(t, c) - QMatrix::identity(n)) <= 1e-12);
  }
}

TEST_CASE("characteristic function gives the Riesz projection") {
  const QMatrix t = diag({Quaternion::i(), 3.0});
  const Contour sigma = build_contour({{0, 1}}, {{3, 0}});
  const Contour full = merge_contours(sigma, build_contour({{3, 0}}, {{0, 1}}));
  const QMatrix chi_t = func_calc(characteristic_function(sigma), Side::left, t, full);
  CHECK(op_norm(chi_t - riesz_projection(t, sigma)) <= 1e-12);
  CHECK(op_norm(chi_t - diag({1.0, 0.0})) <= 1e-12);
}

TEST_CASE("adjoint of the calculus") {
  Rng rng(31);
  const QMatrix t = random_qmatrix(rng, 4, 4);
  const Contour c = build_contour(spherical_spectrum(t).spheres, {});
  CHECK(calc_adjoint_check(polynomial_function({1.0, 1.0, 1.0}), t, c) <= 1e-10);
  const SliceFunction f = polynomial_function({0.0, 3.0});
  const SliceFunction fh = hat(f);
  const Quaternion x = q(0.5, 1, -2, 0.25);
  CHECK((fh.eval(x) - f.eval(x.conj()).conj()).norm() <= 1e-15);
}

TEST_CASE("Riesz decomposition of diag(i, 3)") {
  const QMatrix t = diag({Quaternion::i(), 3.0});
  const RieszPair rp = riesz_decompose(t, {{0, 1}}, 1e-6);
  CHECK(rp.certified);
  CHECK(op_norm(rp.p_sigma - diag({1.0, 0.0})) <= 1e-10);
  CHECK(op_norm(rp.p_tau - diag({0.0, 1.0})) <= 1e-10);
  REQUIRE(rp.spectrum_sigma.size() == 1);
  CHECK(sphere_distance(rp.spectrum_sigma.spheres[0], {0, 1}) <= 1e-8);
  CHECK(rp.basis_sigma.cols() == 1);
}

TEST_CASE("Riesz partition errors") {
  CHECK_THROWS_AS(riesz_decompose(QMatrix::identity(2), {{1, 0}}, 1e-6), PartitionError);
  const QMatrix t = diag({Quaternion::i(), 3.0});
  CHECK_THROWS_AS(riesz_decompose(t, {{5, 0}}, 1e-6), PartitionError);
  CHECK_THROWS_AS(riesz_decompose(t, {{0, 1}, {0, 1}}, 1e-6), PartitionError);
  CHECK_THROWS_AS(riesz_decompose(t, {{0, 1}}, {{5, 0}}), PartitionError);
  CHECK_THROWS_AS(riesz_decompose(QMatrix(2, 3), {{0, 1}}, 1e-6), ValidationError);
}

TEST_CASE("Riesz decomposition with one side only reachable through the complement") {
  const QMatrix t = diag({Quaternion::i(), 0.5 * Quaternion::j()});
  const RieszPair rp = riesz_decompose(t, {{0, 1}}, 1e-6);
  CHECK(rp.sigma_from_complement);
  CHECK_FALSE(rp.tau_from_complement);
  CHECK(rp.certified);
  CHECK(op_norm(rp.p_sigma - diag({1.0, 0.0})) <= 1e-10);
}

TEST_CASE("Riesz projections agree with the eigenprojection oracle") {
  Rng rng(32);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Sphere> spheres;
    QMatrix t = three_sphere_normal(rng, spheres);
    const bool similar = trial % 2 == 1;
    if (similar) {
      const QMatrix s = random_invertible(rng, 6);
      t = testing::inverse(s) * t * s;
    }
    const std::vector<Sphere> sigma{spheres[trial % 3]};
    std::vector<Sphere> tau;
    for (int k = 0; k < 3; ++k)
      if (k != trial % 3) tau.push_back(spheres[k]);
    const RieszPair rp = riesz_decompose(t, sigma, tau);
    CHECK(op_norm(rp.p_sigma - oracles::eigenprojection(t, sigma)) <= 1e-8);
    CHECK(rp.residuals.idempotent_sigma <= 1e-10);
    CHECK(rp.residuals.sum <= 1e-10);
    CHECK(rp.residuals.product <= 1e-10);
    CHECK(rp.residuals.commute_sigma <= 1e-10);
    CHECK(rp.residuals.hausdorff_sigma <= 1e-8);
    CHECK(rp.residuals.hausdorff_tau <= 1e-8);
    CHECK(rp.self_adjoint_checked == !similar);
    if (!similar) CHECK(rp.residuals.self_adjoint_sigma <= 1e-10);
    CHECK(rp.certified);
  }
}

TEST_CASE("slice independence of the projection") {
  Rng rng(33);
  std::vector<Sphere> spheres;
  const QMatrix s = random_invertible(rng, 6);
  const QMatrix t = testing::inverse(s) * three_sphere_normal(rng, spheres) * s;
  const std::vector<Sphere> sigma{spheres[0], spheres[2]}, tau{spheres[1]};
  const QMatrix pi = riesz_projection(t, build_contour(sigma, tau, ImaginaryUnit::i()));
  const QMatrix pm = riesz_projection(t, build_contour(sigma, tau, ImaginaryUnit(1, 1, 0)));
  CHECK(op_norm(pi - pm) <= 1e-8);
}

TEST_CASE("quadrature converges geometrically in the node count") {
  const QMatrix t = diag({Quaternion::i(), 1.6});
  const QMatrix target = diag({1.0, 0.0});
  auto err = [&](std::size_t nodes) {
    return op_norm(riesz_projection(t, build_contour({{0, 1}}, {{1.6, 0}}, ImaginaryUnit::i(), nodes)) - target);
  };
  const double e32 = err(32), e64 = err(64), e128 = err(128);
  CHECK(e64 < e32);
  CHECK(e64 >= 10.0 * e128);
}

TEST_CASE("match_spheres") {
  const SphericalSpectrum spec = spherical_spectrum(diag({Quaternion::i(), 3.0}));
  const auto m = match_spheres(spec, {{3.0 + 1e-9, 0.0}}, 1e-6);
  REQUIRE(m.size() == 1);
  CHECK(m[0] == spec.spheres[1]);
  CHECK_THROWS_AS(match_spheres(spec, {{3.1, 0.0}}, 1e-6), PartitionError);
}
