#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quatcalc/qmatrix.hpp"
#include "quatcalc/spectrum.hpp"

namespace quatcalc {

/// Largest n for which the 4n^2-dimensional commutant systems are solved.
inline constexpr std::size_t kMaxCommutantSize = 16;

/// Real-linear basis of {X : X T = T X}, orthonormal for the real Frobenius
/// inner product re tr(X* Y).
struct CommutantBasis {
  std::vector<QMatrix> basis;
  std::size_t dim() const { return basis.size(); }
};

/// Null space of X -> X T - T X over the 4n^2 real coordinates of X.
/// Throws ValidationError for non-square T or n > kMaxCommutantSize.
CommutantBasis commutant(const QMatrix& t, double rel_tol = 1e-9);

/// Self-adjoint elements of the commutant of {T, T*}.
CommutantBasis self_adjoint_commutant(const QMatrix& t, double rel_tol = 1e-9);

/// Orthogonal projection (Frobenius) of x onto span(basis).
QMatrix project_onto(const CommutantBasis& basis, const QMatrix& x);

struct ReducibilityResult {
  bool reducible = false;
  std::optional<QMatrix> witness;  ///< nontrivial orthogonal projection commuting with T
};

/// T is reducible iff the self-adjoint part of the commutant of {T, T*}
/// contains more than the real multiples of I; the witness is a spectral
/// projection of such an element.
ReducibilityResult is_reducible(const QMatrix& t);

enum class Decision { yes, no, indeterminate };
std::string to_string(Decision d);

struct IrreducibilityReport {
  Decision strongly_irreducible = Decision::indeterminate;
  bool irreducible = false;
  std::optional<QMatrix> witness;  ///< nontrivial idempotent commuting with T
  std::string method = "structural";
  bool oracle_checked = false;
  std::size_t sphere_count = 0;
  std::vector<std::size_t> block_sizes;  ///< quaternionic Jordan blocks when a single sphere
  double margin = 0.0;                   ///< rank decision margin (see JordanStructure)
  std::string note;
};

/// Strong irreducibility by Jordan structure: strongly irreducible iff
/// sigma_S(T) is one sphere carrying one quaternionic Jordan block. For
/// several spheres the witness is the Riesz projection onto the first one.
/// Borderline rank decisions give Decision::indeterminate.
IrreducibilityReport is_strongly_irreducible(const QMatrix& t);

/// Spectral projection of chi(T) onto the eigenvalues in {lambda, conj(lambda)},
/// lambda = re + i rad, by small complex-plane contours; mapped back to H.
/// Throws SeparationError if the cluster cannot be isolated.
QMatrix complex_spectral_projection(const QMatrix& t, const Sphere& sphere, std::size_t nodes = 256);

struct ExtensionIrreducibilityReport {
  Decision complex_strong = Decision::indeterminate;
  bool complex_irreducible = false;
  IrreducibilityReport quaternionic;
  bool strong_agree = false;
  bool irreducible_agree = false;
  std::optional<CMatrix> complex_witness;  ///< idempotent commuting with Sp
};

/// Decides (strong) irreducibility of a complex Sp on H+^{Ji} and of its
/// extension, and compares the two.
ExtensionIrreducibilityReport extension_irreducibility_check(const CMatrix& sp, const AntiSelfAdjointUnitary& j);

/// Complex side on its own: strong irreducibility of a complex matrix by its
/// Jordan structure, irreducibility by dim_C of the commutant of {S, S*}.
Decision complex_strongly_irreducible(const CMatrix& s, std::optional<CMatrix>* witness = nullptr);
bool complex_irreducible(const CMatrix& s);

}  // namespace quatcalc
