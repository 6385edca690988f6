#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "quatcalc/error.hpp"
#include "quatcalc/irreducibility.hpp"
#include "quatcalc/oracles.hpp"
#include "quatcalc/scalculus.hpp"

using namespace quatcalc;
using testing::diag;
using testing::q;

namespace {

void check_witness(const QMatrix& t, const IrreducibilityReport& r) {
  REQUIRE(r.witness.has_value());
  const QMatrix& e = *r.witness;
  CHECK(op_norm(e * e - e) <= 1e-8);
  CHECK(op_norm(e * t - t * e) <= 1e-8 * std::max(1.0, op_norm(t)));
  CHECK(op_norm(e) > 0.5);
  CHECK(op_norm(QMatrix::identity(t.rows()) - e) > 0.5);
}

}  // namespace

TEST_CASE("commutant dimensions") {
  CHECK(commutant(QMatrix::identity(2)).dim() == 16);
  CHECK(commutant(diag({1.0, 2.0})).dim() == 8);
  CHECK(commutant(diag({Quaternion::i(), 3.0})).dim() == 6);
  CHECK(commutant(QMatrix(2, 2, {0.0, 1.0, 0.0, 0.0})).dim() == 8);
  CHECK(commutant(QMatrix::scalar(1, Quaternion::i())).dim() == 2);
}

TEST_CASE("commutant dimensions agree with the Hamilton-product oracle") {
  for (const auto& c : oracles::irreducibility_suite(5, 3, 5)) {
    CAPTURE(c.name);
    CHECK(commutant(c.t).dim() == oracles::commutant_dimension(c.t));
  }
}

TEST_CASE("commutant elements commute") {
  Rng rng(40);
  const QMatrix t(2, 2, {q(1, 1), 1.0, 0.0, q(1, 1)});
  const CommutantBasis b = commutant(t);
  for (const auto& x : b.basis) CHECK(op_norm(x * t - t * x) <= 1e-12);
  const QMatrix y = project_onto(b, random_qmatrix(rng, 2, 2));
  CHECK(op_norm(y * t - t * y) <= 1e-12);
}

TEST_CASE("reducibility by orthogonal projections") {
  const ReducibilityResult d = is_reducible(diag({1.0, 2.0}));
  CHECK(d.reducible);
  REQUIRE(d.witness.has_value());
  CHECK(op_norm(*d.witness - d.witness->adjoint()) <= 1e-10);
  CHECK_FALSE(is_reducible(QMatrix(2, 2, {0.0, 1.0, 0.0, 0.0})).reducible);
  CHECK_FALSE(is_reducible(QMatrix::scalar(1, q(1, 1))).reducible);
}

TEST_CASE("strong irreducibility decisions") {
  SUBCASE("distinct spheres are strongly reducible") {
    const QMatrix t = diag({Quaternion::i(), 3.0});
    const IrreducibilityReport r = is_strongly_irreducible(t);
    CHECK(r.strongly_irreducible == Decision::no);
    CHECK_FALSE(r.irreducible);
    check_witness(t, r);
  }
  SUBCASE("a single Jordan block is strongly irreducible") {
    for (const Quaternion l : {q(0), q(1), q(1, 1), q(0, 0, 2)}) {
      const QMatrix t(2, 2, {l, 1.0, 0.0, l});
      const IrreducibilityReport r = is_strongly_irreducible(t);
      CHECK(r.strongly_irreducible == Decision::yes);
      CHECK(r.irreducible);
      CHECK_FALSE(r.witness.has_value());
      CHECK(r.block_sizes == std::vector<std::size_t>{2});
    }
  }
  SUBCASE("one sphere with two blocks is strongly reducible") {
    const QMatrix t = QMatrix::scalar(2, q(1, 1));
    const IrreducibilityReport r = is_strongly_irreducible(t);
    CHECK(r.strongly_irreducible == Decision::no);
    check_witness(t, r);
  }
  SUBCASE("1x1 matrices are strongly irreducible") {
    CHECK(is_strongly_irreducible(QMatrix::scalar(1, q(2, 1, 1, 0))).strongly_irreducible == Decision::yes);
  }
  SUBCASE("irreducible but strongly reducible") {
    const QMatrix t(2, 2, {q(1, 1), 1.0, 0.0, q(0, 0, 1)});
    const IrreducibilityReport r = is_strongly_irreducible(t);
    CHECK(r.strongly_irreducible == Decision::no);
    CHECK(r.irreducible);
    check_witness(t, r);
  }
  SUBCASE("borderline rank is indeterminate") {
    const IrreducibilityReport r = is_strongly_irreducible(QMatrix(2, 2, {0.0, 1e-6, 0.0, 0.0}));
    CHECK(r.strongly_irreducible == Decision::indeterminate);
  }
  CHECK_THROWS_AS(is_strongly_irreducible(QMatrix(2, 3)), ValidationError);
}

TEST_CASE("structural decision matches the brute-force search on a sample") {
  const auto cases = oracles::irreducibility_suite(7, 2, 4);
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const IrreducibilityReport r = is_strongly_irreducible(c.t);
    const bool reducible = oracles::brute_force_idempotent(c.t, 32).found;
    CHECK(r.strongly_irreducible == (reducible ? Decision::no : Decision::yes));
    if (r.witness) check_witness(c.t, r);
  }
}

TEST_CASE("several spheres: not strongly irreducible and the Riesz projection commutes") {
  Rng rng(41);
  for (int k = 0; k < 5; ++k) {
    const QMatrix t = random_qmatrix(rng, 3, 3);
    const IrreducibilityReport r = is_strongly_irreducible(t);
    REQUIRE(r.sphere_count >= 2);
    CHECK(r.strongly_irreducible == Decision::no);
    check_witness(t, r);
  }
}

TEST_CASE("strong irreducibility is a similarity invariant") {
  Rng rng(42);
  const QMatrix j3(3, 3, {q(1, 1), 1.0, 0.0, 0.0, q(1, 1), 1.0, 0.0, 0.0, q(1, 1)});
  for (int k = 0; k < 5; ++k) {
    const QMatrix s = random_invertible(rng, 3);
    const QMatrix t = s * j3 * testing::inverse(s);
    const IrreducibilityReport r = is_strongly_irreducible(t);
    CHECK(r.strongly_irreducible == Decision::yes);
    CHECK(r.block_sizes == std::vector<std::size_t>{3});
  }
}

TEST_CASE("complex decisions and the extension") {
  CMatrix jordan(2, 2);
  jordan << std::complex<double>(1, 1), 1.0, 0.0, std::complex<double>(1, 1);
  CHECK(complex_strongly_irreducible(jordan) == Decision::yes);
  CHECK(complex_irreducible(jordan));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  std::optional<CMatrix> w;
  CHECK(complex_strongly_irreducible(d, &w) == Decision::no);
  REQUIRE(w.has_value());
  CHECK(((*w) * (*w) - *w).norm() <= 1e-8);
  CHECK_FALSE(complex_irreducible(d));

  Rng rng(43);
  const QMatrix u = random_unitary(rng, 2);
  const AntiSelfAdjointUnitary j(u * QMatrix::scalar(2, Quaternion::i()) * u.adjoint(), 1e-10);
  for (const CMatrix& s : {jordan, d}) {
    const ExtensionIrreducibilityReport rep = extension_irreducibility_check(s, j);
    CHECK(rep.strong_agree);
    CHECK(rep.irreducible_agree);
  }
}

TEST_CASE("extension equivalence on the complex suite") {
  Rng rng(44);
  for (const auto& c : oracles::complex_suite(9, 2, 4)) {
    CAPTURE(c.name);
    const auto n = static_cast<std::size_t>(c.s.rows());
    const QMatrix u = random_unitary(rng, n);
    const AntiSelfAdjointUnitary j(u * QMatrix::scalar(n, Quaternion::i()) * u.adjoint(), 1e-10);
    const ExtensionIrreducibilityReport rep = extension_irreducibility_check(c.s, j);
    CHECK(rep.strong_agree);
    CHECK(rep.irreducible_agree);
  }
}
