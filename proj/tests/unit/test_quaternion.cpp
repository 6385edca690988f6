#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "helpers.hpp"
#include "quatcalc/error.hpp"
#include "quatcalc/quaternion.hpp"

using namespace quatcalc;
using testing::q;

TEST_CASE("Hamilton multiplication table") {
  const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  CHECK(i * j == k);
  CHECK(j * k == i);
  CHECK(k * i == j);
  CHECK(j * i == -k);
  CHECK(i * i == q(-1));
  CHECK(j * j == q(-1));
  CHECK(k * k == q(-1));
  CHECK(i * j * k == q(-1));
}

TEST_CASE("algebraic identities on random quaternions") {
  Rng rng(1);
  for (int t = 0; t < 2000; ++t) {
    const Quaternion a = random_quaternion(rng), b = random_quaternion(rng), c = random_quaternion(rng);
    const double s = a.norm() * b.norm() * c.norm();
    CHECK(((a * b) * c - a * (b * c)).norm() <= 1e-14 * s);
    CHECK(std::abs((a * b).norm() - a.norm() * b.norm()) <= 1e-14 * a.norm() * b.norm());
    CHECK(((a * b).conj() - b.conj() * a.conj()).norm() <= 1e-14 * a.norm() * b.norm());
    CHECK((a * a.inverse() - Quaternion::one()).norm() <= 1e-14);
    CHECK((a.inverse() * a - Quaternion::one()).norm() <= 1e-14);
  }
}

TEST_CASE("inverse of zero is a domain error") { CHECK_THROWS_AS(Quaternion().inverse(), DomainError); }

TEST_CASE("imaginary units") {
  CHECK_THROWS_AS(ImaginaryUnit(0, 0, 0), DomainError);
  const ImaginaryUnit m(1, 1, 0);
  CHECK(m.x() == doctest::Approx(1 / std::sqrt(2.0)));
  const Quaternion mq = m.as_quaternion();
  CHECK((mq * mq + Quaternion::one()).norm() <= 1e-15);
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const ImaginaryUnit u = random_imaginary_unit(rng);
    const Quaternion a = u.as_quaternion(), b = u.anticommuting().as_quaternion();
    CHECK((a * b + b * a).norm() <= 1e-14);
    CHECK(b.norm() == doctest::Approx(1.0));
  }
  CHECK(ImaginaryUnit::i().anticommuting().as_quaternion() == Quaternion::j());
}

TEST_CASE("spheres and slices") {
  CHECK(sphere_of(q(1, 1)) == Sphere{1, 1});
  CHECK(sphere_of(Quaternion::j()) == sphere_of(Quaternion::i()));
  CHECK(sphere_of(q(2, 0, 3, 4)) == Sphere{2, 5});
  const ImaginaryUnit m(0, 1, 1);
  const Quaternion s = to_slice({1.5, -2.0}, m);
  CHECK(s.w == 1.5);
  CHECK(sphere_of(s).rad == doctest::Approx(2.0));
  CHECK(sphere_of(slice_embed({3, 0.5}, m, -1)).rad == doctest::Approx(0.5));
  CHECK(sphere_distance({0, 1}, {3, 5}) == doctest::Approx(5.0));
  const std::vector<Sphere> a{{0, 1}, {3, 0}}, b{{0, 1}};
  CHECK(distance_to_set({3, 0}, b) == doctest::Approx(std::sqrt(10.0)));
  CHECK(hausdorff_distance(a, b) == doctest::Approx(std::sqrt(10.0)));
  CHECK(std::isinf(distance_to_set({0, 0}, std::vector<Sphere>{})));
}

TEST_CASE("every member of a sphere is similar to its slice representative") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const Quaternion p = random_quaternion(rng);
    const Quaternion h = random_unit_quaternion(rng);
    const Quaternion conj = h * p * h.inverse();
    CHECK(sphere_distance(sphere_of(p), sphere_of(conj)) <= 1e-14 * p.norm());
  }
}

TEST_CASE("clustering conjugate pairs into spheres") {
  using cd = std::complex<double>;
  const std::vector<cd> pts{{0, 1}, {0, -1}, {3, 0}, {3, 0}, {1, 2}, {1, -2}};
  const auto cl = cluster_spheres(pts, 1e-9);
  REQUIRE(cl.size() == 3);
  CHECK(cl[0].sphere == Sphere{0, 1});
  CHECK(cl[0].count == 2);
  CHECK(cl[1].sphere == Sphere{1, 2});
  CHECK(cl[2].sphere == Sphere{3, 0});
  CHECK(cl[2].count == 2);
  const std::vector<cd> asym{{0, 1}, {0, 2}};
  CHECK_THROWS_AS(cluster_spheres(asym, 1e-9), ValidationError);
  const std::vector<cd> near_real{{2, 1e-12}, {2, -1e-12}};
  CHECK(cluster_spheres(near_real, 1e-9)[0].sphere.rad == 0.0);
}
