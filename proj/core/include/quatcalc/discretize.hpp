#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "quatcalc/qmatrix.hpp"

namespace quatcalc {

/// Midpoint collocation of operators on L^2([0,1]; H) over n uniform cells,
/// x_r = (r + 1/2) h with h = 1/n. Matrices act on the nodal values g(x_r);
/// the discrete inner product is h sum conj(f_r) g_r, whose induced operator
/// norm coincides with op_norm of the matrix.
enum class GridKind { multiplication, kernel, volterra, composite };
std::string to_string(GridKind k);

struct GridOperator {
  std::size_t n = 0;
  double h = 0.0;
  QMatrix t;
  GridKind kind = GridKind::composite;
  std::string description;
  std::string convention;
};

using GridFunction = std::function<Quaternion(double)>;
using GridKernel = std::function<Quaternion(double, double)>;

std::vector<double> midpoints(std::size_t n);

/// diag(f(x_r)).
GridOperator mult_op(const GridFunction& f, std::size_t n, std::string description = "f");

/// h k(x_r, x_c). Quaternion-valued kernels multiply g from the left.
GridOperator kernel_op(const GridKernel& k, std::size_t n, std::string description = "k");

/// Kernel restricted to y <= x: h k(x_r, x_c) for c < r and h/2 k(x_r, x_r)
/// on the diagonal (the cell holding the upper limit counts half).
GridOperator volterra_kernel_op(const GridKernel& k, std::size_t n, std::string description = "k 1{y<=x}");

/// (K g)(x) = (j/2) int_0^x g(t) dt. Requires n >= 2.
GridOperator volterra_op(std::size_t n);

/// The rank-one kernel (1/2) x y.
GridOperator rank_one_op(std::size_t n);

/// Indicator of [0, 1/3].
Quaternion indicator_first_third(double x);

enum class ExampleKind { normal, nonnormal };
ExampleKind parse_example_kind(const std::string& s);
std::string to_string(ExampleKind k);

/// T = (W + K) S with W = M_{1[0,1/3]}, S = M_x and
///   normal:    T g(x) = 1[0,1/3](x) x g(x) + (1/2) int_0^1 x y^2 g(y) dy,   K = (1/2) x y
///   nonnormal: T g(x) = 1[0,1/3](x) x g(x) + (j/2) int_0^x y g(y) dy,      K = (j/2) int_0^x
/// T is assembled from its own definition, independently of the factors.
struct FactorizationExample {
  ExampleKind which = ExampleKind::normal;
  std::size_t n = 0;
  GridOperator t, w, k, s;
  double t_norm = 0.0;
  double residual = 0.0;            ///< ||T - (W + K) S||
  double relative_residual = 0.0;   ///< residual / ||T||
  double k_norm = 0.0;
  double k_reference = 0.0;         ///< continuum value of ||K||: 1/6 or 1/pi
  double k_bound = 0.0;             ///< analytic upper bound: 1/3 or 1/2
  double delta = 0.5;               ///< factorization requires ||K|| < delta
  double normality_defect = 0.0;    ///< ||T T* - T* T|| / ||T||^2
  double w_partial_isometry_defect = 0.0;  ///< ||W* W W* W - W* W||
  std::size_t s_sphere_count = 0;   ///< spheres of the finite section of M_x
  std::string s_note;
};

/// Throws ValidationError unless n is a positive multiple of 3.
FactorizationExample factorization_example(ExampleKind which, std::size_t n);

struct SweepRow {
  std::size_t n = 0;
  double norm = 0.0;
  double reference = 0.0;
  double error = 0.0;  ///< |norm - reference|
};

/// ||K_n|| against its continuum value for the K of the chosen example.
std::vector<SweepRow> norm_sweep(ExampleKind which, const std::vector<std::size_t>& sizes);

/// a, 2a, 4a, ... up to b inclusive.
std::vector<std::size_t> doubling_sizes(std::size_t a, std::size_t b);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace quatcalc
