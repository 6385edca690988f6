#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quatcalc/irreducibility.hpp"
#include "quatcalc/qmatrix.hpp"

namespace quatcalc::oracles {

/// ||T|| by power iteration on T*T carried out in quaternion arithmetic.
double power_iteration_norm(const QMatrix& t, std::size_t iterations = 2000, std::uint64_t seed = 7);

/// V diag(mask) V^{-1} from an eigendecomposition of chi(T), keeping the
/// eigenvalues whose sphere lies in sigma (within tol). T must be
/// diagonalizable.
QMatrix eigenprojection(const QMatrix& t, const std::vector<Sphere>& sigma, double tol = 1e-6);

/// |T| from the eigendecomposition of chi(T* T).
QMatrix modulus_from_gram(const QMatrix& t);

/// Commutant dimension from the entrywise Hamilton-product expansion of
/// X T - T X, ranked by full-pivot LU.
std::size_t commutant_dimension(const QMatrix& t, double rel_tol = 1e-9);

struct IdempotentSearch {
  bool found = false;
  std::optional<QMatrix> witness;   ///< lexicographically smallest nontrivial idempotent found
  std::size_t starts = 0;
  std::size_t converged_trivial = 0;
  std::size_t converged_nontrivial = 0;
  std::size_t not_converged = 0;
};

/// Damped Gauss-Newton (Levenberg-Marquardt) on E^2 - E over the
/// coordinates of the commutant of T, from `starts` random points.
IdempotentSearch brute_force_idempotent(const QMatrix& t, std::size_t starts = 64, std::uint64_t seed = 11);

/// Same search restricted to self-adjoint elements commuting with T and T*
/// (nontrivial orthogonal projections).
IdempotentSearch brute_force_projection(const QMatrix& t, std::size_t starts = 64, std::uint64_t seed = 13);

/// Complex analogue over the complex commutant of S.
bool brute_force_complex_idempotent(const CMatrix& s, std::size_t starts = 64, std::uint64_t seed = 17);

struct SuiteCase {
  std::string name;
  QMatrix t;
};

/// n <= 3 matrices: distinct and repeated diagonals, real and nonreal Jordan
/// blocks, mixed block structures, and `randoms` Gaussian matrices.
std::vector<SuiteCase> irreducibility_suite(std::uint64_t seed, std::size_t max_n = 3, std::size_t randoms = 20);

struct ComplexSuiteCase {
  std::string name;
  CMatrix s;
};

/// Complex matrices of size <= max_n for the extension equivalence check.
std::vector<ComplexSuiteCase> complex_suite(std::uint64_t seed, std::size_t max_n = 3, std::size_t randoms = 20);

}  // namespace quatcalc::oracles
