#include "quatcalc/discretize.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "quatcalc/error.hpp"
#include "quatcalc/spectrum.hpp"

namespace quatcalc {

namespace {

constexpr const char* kMidpoint = "midpoint collocation, x_r = (r + 1/2) h";
constexpr const char* kHalfDiagonal =
    "midpoint collocation, x_r = (r + 1/2) h; cells below the diagonal weigh h, the diagonal cell h/2";

}  // namespace

std::string to_string(GridKind k) {
  switch (k) {
    case GridKind::multiplication: return "multiplication";
    case GridKind::kernel: return "kernel";
    case GridKind::volterra: return "volterra";
    case GridKind::composite: return "composite";
  }
  return "composite";
}

std::vector<double> midpoints(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = (static_cast<double>(r) + 0.5) / static_cast<double>(n);
  return x;
}

GridOperator mult_op(const GridFunction& f, std::size_t n, std::string description) {
  if (n == 0) throw ValidationError("grid needs at least one cell");
  GridOperator g{n, 1.0 / static_cast<double>(n), QMatrix(n, n), GridKind::multiplication, std::move(description),
                 kMidpoint};
  const auto x = midpoints(n);
  for (std::size_t r = 0; r < n; ++r) g.t(r, r) = f(x[r]);
  return g;
}

GridOperator kernel_op(const GridKernel& k, std::size_t n, std::string description) {
  if (n == 0) throw ValidationError("grid needs at least one cell");
  GridOperator g{n, 1.0 / static_cast<double>(n), QMatrix(n, n), GridKind::kernel, std::move(description), kMidpoint};
  const auto x = midpoints(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) g.t(r, c) = g.h * k(x[r], x[c]);
  return g;
}

GridOperator volterra_kernel_op(const GridKernel& k, std::size_t n, std::string description) {
  if (n == 0) throw ValidationError("grid needs at least one cell");
  GridOperator g{n, 1.0 / static_cast<double>(n), QMatrix(n, n), GridKind::volterra, std::move(description),
                 kHalfDiagonal};
  const auto x = midpoints(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < r; ++c) g.t(r, c) = g.h * k(x[r], x[c]);
    g.t(r, r) = (0.5 * g.h) * k(x[r], x[r]);
  }
  return g;
}

GridOperator volterra_op(std::size_t n) {
  if (n < 2) throw ValidationError("the Volterra discretization needs n >= 2");
  const Quaternion half_j = 0.5 * Quaternion::j();
  return volterra_kernel_op([half_j](double, double) { return half_j; }, n, "(j/2) int_0^x g(t) dt");
}

GridOperator rank_one_op(std::size_t n) {
  return kernel_op([](double x, double y) { return Quaternion(0.5 * x * y); }, n, "(1/2) int_0^1 x y g(y) dy");
}

Quaternion indicator_first_third(double x) { return 3.0 * x <= 1.0 ? 1.0 : 0.0; }

ExampleKind parse_example_kind(const std::string& s) {
  if (s == "normal") return ExampleKind::normal;
  if (s == "nonnormal") return ExampleKind::nonnormal;
  throw ValidationError("example must be 'normal' or 'nonnormal', got '" + s + "'");
}

std::string to_string(ExampleKind k) { return k == ExampleKind::normal ? "normal" : "nonnormal"; }

FactorizationExample factorization_example(ExampleKind which, std::size_t n) {
  if (n == 0 || n % 3 != 0) throw ValidationError("n must be a positive multiple of 3, got " + std::to_string(n));
  FactorizationExample ex;
  ex.which = which;
  ex.n = n;
  ex.w = mult_op(indicator_first_third, n, "1[0,1/3](x)");
  ex.s = mult_op([](double x) { return Quaternion(x); }, n, "x");

  const Quaternion half_j = 0.5 * Quaternion::j();
  GridOperator kernel_part;
  if (which == ExampleKind::normal) {
    ex.k = rank_one_op(n);
    kernel_part = kernel_op([](double x, double y) { return Quaternion(0.5 * x * y * y); }, n,
                            "(1/2) int_0^1 x y^2 g(y) dy");
    ex.k_reference = 1.0 / 6.0;
    ex.k_bound = 1.0 / 3.0;
  } else {
    ex.k = volterra_op(n);
    kernel_part = volterra_kernel_op([half_j](double, double y) { return half_j * y; }, n,
                                     "(j/2) int_0^x y g(y) dy");
    ex.k_reference = 1.0 / std::numbers::pi;
    ex.k_bound = 0.5;
  }
  const GridOperator diag_part = mult_op([](double x) { return indicator_first_third(x) * x; }, n, "1[0,1/3](x) x");
  ex.t = {n, ex.w.h, diag_part.t + kernel_part.t, GridKind::composite,
          diag_part.description + " g(x) + " + kernel_part.description, kernel_part.convention};

  ex.t_norm = op_norm(ex.t.t);
  ex.residual = op_norm(ex.t.t - (ex.w.t + ex.k.t) * ex.s.t);
  ex.relative_residual = ex.t_norm > 0.0 ? ex.residual / ex.t_norm : ex.residual;
  ex.k_norm = op_norm(ex.k.t);
  ex.normality_defect = normality_defect(ex.t.t);
  const QMatrix wsw = ex.w.t.adjoint() * ex.w.t;
  ex.w_partial_isometry_defect = op_norm(wsw * wsw - wsw);
  ex.s_sphere_count = spherical_spectrum(ex.s.t).size();
  ex.s_note = "the finite section of M_x is diagonal with " + std::to_string(ex.s_sphere_count) +
              " distinct real spheres, hence strongly reducible; strong irreducibility of M_x rests on its empty "
              "point spectrum in L^2([0,1]; H), which no finite section retains";
  return ex;
}

std::vector<SweepRow> norm_sweep(ExampleKind which, const std::vector<std::size_t>& sizes) {
  std::vector<SweepRow> rows;
  const double reference = which == ExampleKind::normal ? 1.0 / 6.0 : 1.0 / std::numbers::pi;
  for (std::size_t n : sizes) {
    const GridOperator k = which == ExampleKind::normal ? rank_one_op(n) : volterra_op(n);
    const double v = op_norm(k.t);
    rows.push_back({n, v, reference, std::abs(v - reference)});
  }
  return rows;
}

std::vector<std::size_t> doubling_sizes(std::size_t a, std::size_t b) {
  if (a == 0 || b < a) throw ValidationError("sweep range must satisfy 0 < a <= b");
  std::vector<std::size_t> out;
  for (std::size_t n = a; n <= b; n *= 2) out.push_back(n);
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "n,norm,reference,error\n" << std::setprecision(17);
  for (const auto& r : rows) os << r.n << ',' << r.norm << ',' << r.reference << ',' << r.error << '\n';
  return os.str();
}

}  // namespace quatcalc
