#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "quatcalc/discretize.hpp"
#include "quatcalc/error.hpp"
#include "quatcalc/irreducibility.hpp"
#include "quatcalc/oracles.hpp"
#include "quatcalc/random.hpp"
#include "quatcalc/scalculus.hpp"
#include "quatcalc/spectrum.hpp"

namespace quatcalc::cli {

namespace {

Check make(std::string name, bool pass, double measured, double tol, std::string rel, std::string detail) {
  return {std::move(name), pass, measured, tol, std::move(rel), std::move(detail)};
}

std::size_t size_at(const SuiteOptions& o, std::size_t k, std::size_t fallback = 5) {
  return o.sizes.empty() ? fallback : o.sizes[k % o.sizes.size()];
}

std::size_t max_size(const SuiteOptions& o) {
  return o.sizes.empty() ? 3 : *std::max_element(o.sizes.begin(), o.sizes.end());
}

QMatrix inverse(const QMatrix& s) { return chi_inv_nearest(chi(s).inverse()); }

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Three spheres near re = -2, 0, 2 with rad in [0, 0.4], each of multiplicity 2.
QMatrix separated_normal(Rng& rng, std::vector<Sphere>& spheres) {
  spheres.clear();
  for (double base : {-2.0, 0.0, 2.0}) spheres.push_back({base + uniform(rng, -0.2, 0.2), uniform(rng, 0.0, 0.4)});
  const std::vector<std::size_t> mult(3, 2);
  return random_normal(rng, spheres, mult);
}

/// Normal matrix with n distinct nonreal spheres (one real when with_real).
QMatrix spread_normal(Rng& rng, std::size_t n, bool with_real) {
  std::vector<Sphere> spheres;
  for (std::size_t k = 0; k < n; ++k)
    spheres.push_back({uniform(rng, -2.0, 2.0), (with_real && k == 0) ? 0.0 : uniform(rng, 0.2, 2.0)});
  const std::vector<std::size_t> mult(n, 1);
  return random_normal(rng, spheres, mult);
}

AntiSelfAdjointUnitary random_j(Rng& rng, std::size_t n) {
  const QMatrix u = random_unitary(rng, n);
  return AntiSelfAdjointUnitary(u * QMatrix::scalar(n, Quaternion::i()) * u.adjoint(), 1e-9);
}

CMatrix random_complex(Rng& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = {g(rng), g(rng)};
  return m;
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

Check check_le(std::string name, double measured, double tolerance, std::string detail) {
  return make(std::move(name), measured <= tolerance, measured, tolerance, "<=", std::move(detail));
}
Check check_lt(std::string name, double measured, double tolerance, std::string detail) {
  return make(std::move(name), measured < tolerance, measured, tolerance, "<", std::move(detail));
}
Check check_gt(std::string name, double measured, double tolerance, std::string detail) {
  return make(std::move(name), measured > tolerance, measured, tolerance, ">", std::move(detail));
}
Check check_eq(std::string name, double measured, double expected, std::string detail) {
  return make(std::move(name), measured == expected, measured, expected, "==", std::move(detail));
}

nlohmann::ordered_json to_json(const Check& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["measured"] = c.measured;
  j["relation"] = c.relation;
  j["tolerance"] = c.tolerance;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

void SuiteTolerances::set_all(double v) {
  for (double* p : {&quaternion, &chi, &norm_oracle, &modulus, &polar, &cartesian, &j_invariants, &extension,
                    &resolvent, &s_resolvent_equation, &spectrum, &riesz_oracle, &riesz_step, &riesz_restricted,
                    &calculus, &slice, &adjoint, &factorization, &normal, &witness, &volterra})
    *p = v;
}

std::vector<Check> quaternion_suite(const SuiteOptions& o) {
  Rng rng(o.seed);
  double assoc = 0, mult = 0, conj = 0, inv = 0;
  for (int k = 0; k < 10000; ++k) {
    const Quaternion p = random_quaternion(rng), q = random_quaternion(rng), r = random_quaternion(rng);
    const double scale = p.norm() * q.norm() * r.norm();
    assoc = std::max(assoc, ((p * q) * r - p * (q * r)).norm() / scale);
    mult = std::max(mult, std::abs((p * q).norm() - p.norm() * q.norm()) / (p.norm() * q.norm()));
    conj = std::max(conj, ((p * q).conj() - q.conj() * p.conj()).norm() / (p.norm() * q.norm()));
    inv = std::max(inv, (q * q.inverse() - Quaternion::one()).norm());
  }
  return {check_le("associativity", assoc, o.tol.quaternion, "10000 random triples, relative"),
          check_le("multiplicative norm", mult, o.tol.quaternion),
          check_le("conjugation reverses products", conj, o.tol.quaternion),
          check_le("inverse", inv, o.tol.quaternion)};
}

std::vector<Check> qmatrix_suite(const SuiteOptions& o) {
  Rng rng(o.seed + 1);
  double hom = 0, adj = 0, round = 0, norm_err = 0, mod_err = 0;
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t n = size_at(o, k);
    const QMatrix a = random_qmatrix(rng, n, n), b = random_qmatrix(rng, n, n);
    const double scale = op_norm(a) * op_norm(b);
    hom = std::max(hom, (chi(a * b) - chi(a) * chi(b)).cwiseAbs().maxCoeff() / scale);
    adj = std::max(adj, (chi(a.adjoint()) - chi(a).adjoint()).cwiseAbs().maxCoeff());
    round = std::max(round, (chi_inv(chi(a)) - a).max_abs());
    norm_err = std::max(norm_err, std::abs(op_norm(a) - oracles::power_iteration_norm(a)) / op_norm(a));
    mod_err = std::max(mod_err, op_norm(modulus(a) - oracles::modulus_from_gram(a)) / op_norm(a));
  }
  return {check_le("chi is multiplicative", hom, o.tol.chi, "relative to ||A|| ||B||"),
          check_le("chi maps adjoints to conjugate transposes", adj, o.tol.chi),
          check_le("chi_inv(chi(T)) = T", round, o.tol.chi),
          check_le("op_norm vs power iteration", norm_err, o.tol.norm_oracle, "relative"),
          check_le("modulus vs Gram eigendecomposition", mod_err, o.tol.modulus, "relative, full rank")};
}

std::vector<Check> polar_suite(const SuiteOptions& o) {
  Rng rng(o.seed + 2);
  double residual = 0, isometry = 0, kernel = 0;
  std::size_t rank_mismatch = 0, cases = 0;
  std::vector<std::string> bad;
  for (std::size_t n : o.sizes) {
    for (std::size_t r : {n, n > 1 ? n - 1 : n, std::size_t{1}}) {
      const QMatrix t = r == n ? random_qmatrix(rng, n, n) : random_low_rank(rng, n, r);
      const PolarDecomposition pd = polar(t);
      const QMatrix& w = pd.partial_isometry;
      const double tn = op_norm(t);
      residual = std::max(residual, op_norm(t - w * pd.modulus) / tn);
      const QMatrix wsw = w.adjoint() * w;
      isometry = std::max(isometry, op_norm(wsw * wsw - wsw));
      const QMatrix q = range_basis(t.adjoint());
      kernel = std::max(kernel, op_norm(w - w * (q * q.adjoint())));
      ++cases;
      if (rank(w) != rank(t) || rank(t) != r || pd.rank != r) {
        ++rank_mismatch;
        bad.push_back(std::to_string(n) + "x" + std::to_string(n) + " rank " + std::to_string(r));
      }
    }
  }
  return {check_le("T = W0 |T|", residual, o.tol.polar, "relative, " + std::to_string(cases) + " cases"),
          check_le("W0 is a partial isometry", isometry, o.tol.polar),
          check_le("W0 vanishes on N(T)", kernel, o.tol.polar),
          check_eq("rank(W0) = rank(T) mismatches", static_cast<double>(rank_mismatch), 0.0, join(bad))};
}

std::vector<Check> cartesian_suite(const SuiteOptions& o) {
  Rng rng(o.seed + 3);
  double recon = 0, jinv = 0, comm = 0;
  std::size_t kernel_cases = 0;
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t n = 5;
    const QMatrix t = spread_normal(rng, n, k % 5 == 4);
    const CartesianDecomposition cd = cartesian(t);
    const QMatrix& a = cd.real_part;
    const QMatrix& b = cd.imag_modulus;
    const QMatrix& j = cd.j;
    const double tn = std::max(1.0, op_norm(t));
    if (cd.kernel_dim > 0) ++kernel_cases;
    recon = std::max(recon, op_norm(a + j * b * 0.5 - t) / op_norm(t));
    jinv = std::max({jinv, op_norm(j.adjoint() + j), op_norm(j.adjoint() * j - QMatrix::identity(n))});
    comm = std::max({comm, op_norm(j * t - t * j) / tn, op_norm(j * t.adjoint() - t.adjoint() * j) / tn,
                     op_norm(a * b - b * a) / (tn * tn), op_norm(a * j - j * a) / tn, op_norm(b * j - j * b) / tn});
  }
  return {check_le("T = A + J B / 2", recon, o.tol.cartesian, "relative, random normal 5x5"),
          check_le("J* = -J and J*J = I", jinv, o.tol.j_invariants),
          check_le("J, A, B, T, T* commute", comm, o.tol.j_invariants,
                   std::to_string(kernel_cases) + " cases with N(T - T*) != 0")};
}

std::vector<Check> extension_suite(const SuiteOptions& o) {
  Rng rng(o.seed + 4);
  double norm_err = 0, commute = 0, round_v = 0, round_c = 0;
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t n = size_at(o, k);
    const AntiSelfAdjointUnitary j = random_j(rng, n);
    const QMatrix e = plus_basis(j);
    const CMatrix tp = random_complex(rng, n);
    const QMatrix tt = extend(tp, j, e);
    norm_err = std::max(norm_err, std::abs(op_norm(tt) - complex_norm(tp)));
    commute = std::max(commute, op_norm(j.matrix() * tt - tt * j.matrix()));
    round_c = std::max(round_c, complex_norm(restrict_to_plus(tt, j, e) - tp));
    const QMatrix v = extend(random_complex(rng, n), j, e);
    round_v = std::max(round_v, op_norm(extend(restrict_to_plus(v, j, e), j, e) - v));
  }
  return {check_le("||T~|| = ||Tp||", norm_err, o.tol.extension),
          check_le("J T~ = T~ J", commute, o.tol.extension),
          check_le("restrict(extend(Tp)) = Tp", round_c, o.tol.extension),
          check_le("extend(restrict(V)) = V", round_v, o.tol.extension)};
}

std::vector<Check> resolvent_suite(const SuiteOptions& o) {
  Rng rng(o.seed + 5);
  double left = 0, right = 0, equation = 0;
  std::size_t samples = 0, skipped = 0;
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t n = size_at(o, k);
    const QMatrix t = random_qmatrix(rng, n, n);
    const SphericalSpectrum spec = spherical_spectrum(t);
    std::vector<SResolventSample> pts;
    for (int r = 0; r < 20; ++r) {
      const Quaternion s = 2.0 * random_quaternion(rng);
      try {
        pts.push_back(s_resolvent(t, spec, s));
      } catch (const SingularityError&) {
        ++skipped;
      }
    }
    for (std::size_t r = 0; r < pts.size(); ++r) {
      left = std::max(left, left_identity_residual(t, pts[r]));
      right = std::max(right, right_identity_residual(t, pts[r]));
      if (r + 1 < pts.size()) equation = std::max(equation, s_resolvent_equation_residual(t, pts[r], pts[r + 1]));
      ++samples;
    }
  }
  const std::string d = std::to_string(samples) + " samples, " + std::to_string(skipped) + " too close to sigma_S";
  return {check_le("S_L^-1(s,T) s - T S_L^-1(s,T) = I", left, o.tol.resolvent, d),
          check_le("s S_R^-1(s,T) - S_R^-1(s,T) T = I", right, o.tol.resolvent, d),
          check_le("S-resolvent equation", equation, o.tol.s_resolvent_equation, d)};
}

std::vector<Check> spectrum_suite(const SuiteOptions& o) {
  Rng rng(o.seed + 6);
  std::vector<Check> out;
  {
    const QMatrix t = QMatrix::diagonal(std::vector<Quaternion>{Quaternion::j(), 3.0});
    const SphericalSpectrum s = spherical_spectrum(t);
    const std::vector<Sphere> expect{{0.0, 1.0}, {3.0, 0.0}};
    const double d = s.size() == 2 ? hausdorff_distance(s.spheres, expect) : 1.0;
    out.push_back(check_le("sigma_S(diag(j,3)) = {[i], [3]}", d, o.tol.spectrum));
  }
  double sim = 0, adj = 0, cross = 0, scalar = 0;
  for (std::size_t k = 0; k < o.trials; ++k) {
    const std::size_t n = size_at(o, k);
    const QMatrix t = random_qmatrix(rng, n, n);
    const QMatrix s = random_invertible(rng, n);
    const SphericalSpectrum a = spherical_spectrum(t);
    sim = std::max(sim, hausdorff_distance(a.spheres, spherical_spectrum(inverse(s) * t * s).spheres));
    adj = std::max(adj, hausdorff_distance(a.spheres, spherical_spectrum(t.adjoint()).spheres));
    for (double v : a.delta_sigma_min) cross = std::max(cross, v / std::max(1.0, a.norm * a.norm));
    const Quaternion q = random_quaternion(rng);
    const SphericalSpectrum sc = spherical_spectrum(QMatrix::scalar(n, q));
    const std::vector<Sphere> one{sphere_of(q)};
    scalar = std::max(scalar, sc.size() == 1 && sc.multiplicities[0] == n ? hausdorff_distance(sc.spheres, one) : 1.0);
  }
  out.push_back(check_le("similarity invariance", sim, o.tol.spectrum, "Hausdorff distance"));
  out.push_back(check_le("sigma_S(T*) = sigma_S(T)", adj, o.tol.spectrum));
  out.push_back(check_le("Delta_q(T) singular on every sphere", cross, o.tol.spectrum, "min singular value / ||T||^2"));
  out.push_back(check_le("sigma_S(q I) = [q] with multiplicity n", scalar, o.tol.spectrum));
  {
    const Quaternion l(1.0, 1.0, 0.0, 0.0);
    const QMatrix t(2, 2, {l, 1.0, 0.0, l});
    const auto ps = point_spectrum(t);
    const bool ok = ps.size() == 1 && ps[0].multiplicity == 2 && ps[0].kernel_dim == 1 && ps[0].eigen_dim == 1 &&
                    ps[0].jordan.block_sizes == std::vector<std::size_t>{2};
    out.push_back(check_eq("point spectrum of a 2x2 Jordan block at 1+i", ok ? 1.0 : 0.0, 1.0,
                           "one sphere, algebraic 2, kernel 1, one block of size 2"));
  }
  return out;
}

std::vector<Check> calculus_suite(const SuiteOptions& o) {
  Rng rng(o.seed + 7);
  double poly = 0, unit = 0, adjoint = 0;
  for (std::size_t k = 0; k < std::max<std::size_t>(1, o.trials / 4); ++k) {
    const std::size_t n = size_at(o, k);
    const QMatrix t = random_qmatrix(rng, n, n);
    const Contour c = build_contour(spherical_spectrum(t).spheres, {}, ImaginaryUnit::i(), o.nodes);
    const SliceFunction sq = polynomial_function({1.0, -2.0, 1.0});
    const QMatrix expect = QMatrix::identity(n) - 2.0 * t + t * t;
    const double scale = std::max(1.0, op_norm(expect));
    poly = std::max({poly, op_norm(func_calc(sq, Side::left, t, c) - expect) / scale,
                     op_norm(func_calc(sq, Side::right, t, c) - expect) / scale});
    unit = std::max(unit, op_norm(riesz_projection(t, c) - QMatrix::identity(n)));
    adjoint = std::max(adjoint, calc_adjoint_check(sq, t, c, Side::left) / scale);
  }
  const QMatrix d = QMatrix::diagonal(std::vector<Quaternion>{Quaternion::i(), 1.6});
  const QMatrix target = QMatrix::diagonal(std::vector<Quaternion>{1.0, 0.0});
  const std::vector<Sphere> sigma{{0.0, 1.0}}, tau{{1.6, 0.0}};
  const double e64 = op_norm(riesz_projection(d, build_contour(sigma, tau, ImaginaryUnit::i(), 64)) - target);
  const double e128 = op_norm(riesz_projection(d, build_contour(sigma, tau, ImaginaryUnit::i(), 128)) - target);
  const double ratio = e64 / std::max(e128, 1e-300);
  std::ostringstream det;
  det << "error 64 nodes " << e64 << ", 128 nodes " << e128;
  return {check_le("polynomial calculus, left and right", poly, o.tol.calculus, "f(q) = (1 - q)^2, relative"),
          check_le("f = 1 gives I", unit, o.tol.calculus),
          check_le("f(T)* = f^(T*)", adjoint, o.tol.adjoint),
          check_gt("quadrature error ratio 64 -> 128 nodes", ratio, 10.0, det.str())};
}

std::vector<Check> riesz_suite(const SuiteOptions& o) {
  Rng rng(o.seed + 8);
  double oracle = 0, steps = 0, restricted = 0;
  std::size_t uncertified = 0;
  const RieszTolerances tol{o.tol.riesz_step, o.tol.riesz_restricted, o.tol.normal};
  {
    const QMatrix t = QMatrix::diagonal(std::vector<Quaternion>{Quaternion::i(), 3.0});
    const RieszPair rp = riesz_decompose(t, {{0.0, 1.0}}, 1e-6, o.nodes, ImaginaryUnit::i(), tol);
    oracle = op_norm(rp.p_sigma - QMatrix::diagonal(std::vector<Quaternion>{1.0, 0.0}));
  }
  for (std::size_t k = 0; k < o.trials; ++k) {
    std::vector<Sphere> spheres;
    const QMatrix t = separated_normal(rng, spheres);
    std::vector<Sphere> sigma, tau;
    for (std::size_t s = 0; s < spheres.size(); ++s) ((k >> s) & 1 ? sigma : tau).push_back(spheres[s]);
    if (sigma.empty()) std::swap(sigma, tau);
    if (tau.empty()) {
      tau.push_back(sigma.back());
      sigma.pop_back();
    }
    const RieszPair rp = riesz_decompose(t, sigma, tau, o.nodes, ImaginaryUnit::i(), tol);
    oracle = std::max(oracle, op_norm(rp.p_sigma - oracles::eigenprojection(t, sigma)));
    const auto& r = rp.residuals;
    steps = std::max({steps, r.idempotent_sigma, r.idempotent_tau, r.self_adjoint_sigma, r.self_adjoint_tau, r.sum,
                      r.product, r.commute_sigma, r.commute_tau});
    restricted = std::max({restricted, r.hausdorff_sigma, r.hausdorff_tau});
    if (!rp.certified) ++uncertified;
  }
  return {check_le("P vs eigenprojection oracle", oracle, o.tol.riesz_oracle, "random normal 6x6, separation >= 0.5"),
          check_le("Steps I-III residuals", steps, o.tol.riesz_step),
          check_le("Step IV restricted spectra", restricted, o.tol.riesz_restricted, "Hausdorff distance"),
          check_eq("uncertified decompositions", static_cast<double>(uncertified), 0.0)};
}

std::vector<Check> slice_suite(const SuiteOptions& o) {
  Rng rng(o.seed + 9);
  const ImaginaryUnit mi = ImaginaryUnit::i();
  const ImaginaryUnit mm(1.0, 1.0, 0.0);
  double proj = 0, poly = 0;
  for (std::size_t k = 0; k < o.trials; ++k) {
    std::vector<Sphere> spheres;
    QMatrix t = separated_normal(rng, spheres);
    if (k % 2 == 1) {
      const QMatrix s = random_invertible(rng, t.rows());
      t = inverse(s) * t * s;
    }
    const std::vector<Sphere> sigma{spheres[k % 3]};
    std::vector<Sphere> tau;
    for (std::size_t s = 0; s < 3; ++s)
      if (s != k % 3) tau.push_back(spheres[s]);
    const QMatrix pi = riesz_projection(t, build_contour(sigma, tau, mi, o.nodes));
    const QMatrix pm = riesz_projection(t, build_contour(sigma, tau, mm, o.nodes));
    proj = std::max(proj, op_norm(pi - pm));
    const SliceFunction f = polynomial_function({0.5, 0.0, 1.0, -0.25});
    const std::vector<Sphere> all = spherical_spectrum(t).spheres;
    const QMatrix fi = func_calc(f, Side::left, t, build_contour(all, {}, mi, o.nodes));
    const QMatrix fm = func_calc(f, Side::left, t, build_contour(all, {}, mm, o.nodes));
    poly = std::max(poly, op_norm(fi - fm) / std::max(1.0, op_norm(fi)));
  }
  return {check_le("Riesz projection: m = i vs m = (i+j)/sqrt(2)", proj, o.tol.slice,
                   "normal and similar-to-normal 6x6"),
          check_le("polynomial calculus: m = i vs m = (i+j)/sqrt(2)", poly, o.tol.slice, "relative")};
}

std::vector<Check> irreducibility_oracle_suite(const SuiteOptions& o) {
  const std::size_t n_max = std::min<std::size_t>(3, max_size(o));
  const auto cases = oracles::irreducibility_suite(o.seed, n_max);
  std::vector<std::string> strong_bad, irr_bad, comm_bad;
  double witness = 0;
  for (const auto& c : cases) {
    const IrreducibilityReport rep = is_strongly_irreducible(c.t);
    const bool bf_reducible = oracles::brute_force_idempotent(c.t).found;
    const Decision expected = bf_reducible ? Decision::no : Decision::yes;
    if (rep.strongly_irreducible != expected) strong_bad.push_back(c.name);
    if (rep.irreducible == oracles::brute_force_projection(c.t).found) irr_bad.push_back(c.name);
    if (commutant(c.t).dim() != oracles::commutant_dimension(c.t)) comm_bad.push_back(c.name);
    if (rep.witness) {
      const QMatrix& e = *rep.witness;
      witness = std::max({witness, op_norm(e * e - e), op_norm(e * c.t - c.t * e) / std::max(1.0, op_norm(c.t))});
    }
  }
  const std::string d = std::to_string(cases.size()) + " matrices, n <= " + std::to_string(n_max);
  return {check_eq("strong irreducibility vs brute-force idempotent search", static_cast<double>(strong_bad.size()),
                   0.0, strong_bad.empty() ? d : join(strong_bad)),
          check_eq("irreducibility vs brute-force projection search", static_cast<double>(irr_bad.size()), 0.0,
                   irr_bad.empty() ? d : join(irr_bad)),
          check_eq("commutant dimension vs Hamilton-product oracle", static_cast<double>(comm_bad.size()), 0.0,
                   comm_bad.empty() ? d : join(comm_bad)),
          check_le("witnesses are idempotent and commute with T", witness, o.tol.witness)};
}

std::vector<Check> similarity_suite(const SuiteOptions& o, std::size_t trials) {
  Rng rng(o.seed + 10);
  const auto cases = oracles::irreducibility_suite(o.seed, std::min<std::size_t>(3, max_size(o)));
  std::vector<std::string> bad;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto& c = cases[k % cases.size()];
    const QMatrix s = random_invertible(rng, c.t.rows());
    const QMatrix t2 = s * c.t * inverse(s);
    const IrreducibilityReport a = is_strongly_irreducible(c.t);
    const IrreducibilityReport b = is_strongly_irreducible(t2);
    if (a.strongly_irreducible != b.strongly_irreducible || a.block_sizes != b.block_sizes) bad.push_back(c.name);
  }
  return {check_eq("strong irreducibility is similarity invariant", static_cast<double>(bad.size()), 0.0,
                   bad.empty() ? std::to_string(trials) + " random similarities" : join(bad))};
}

std::vector<Check> extension_irreducibility_suite(const SuiteOptions& o) {
  Rng rng(o.seed + 11);
  const auto cases = oracles::complex_suite(o.seed, std::min<std::size_t>(3, max_size(o)));
  std::vector<std::string> strong_bad, irr_bad, oracle_bad;
  for (const auto& c : cases) {
    const auto n = static_cast<std::size_t>(c.s.rows());
    const ExtensionIrreducibilityReport rep = extension_irreducibility_check(c.s, random_j(rng, n));
    if (!rep.strong_agree) strong_bad.push_back(c.name);
    if (!rep.irreducible_agree) irr_bad.push_back(c.name);
    const Decision expected = oracles::brute_force_complex_idempotent(c.s) ? Decision::no : Decision::yes;
    if (rep.complex_strong != expected) oracle_bad.push_back(c.name);
  }
  const std::string d = std::to_string(cases.size()) + " complex matrices";
  return {check_eq("strong irreducibility of Sp and its extension agree", static_cast<double>(strong_bad.size()), 0.0,
                   strong_bad.empty() ? d : join(strong_bad)),
          check_eq("irreducibility of Sp and its extension agree", static_cast<double>(irr_bad.size()), 0.0,
                   irr_bad.empty() ? d : join(irr_bad)),
          check_eq("complex decision vs brute-force search", static_cast<double>(oracle_bad.size()), 0.0,
                   oracle_bad.empty() ? d : join(oracle_bad))};
}

std::vector<Check> factorization_suite(const SuiteOptions& o, std::size_t n) {
  std::vector<Check> out;
  for (ExampleKind which : {ExampleKind::normal, ExampleKind::nonnormal}) {
    const FactorizationExample ex = factorization_example(which, n);
    const std::string w = to_string(which);
    out.push_back(check_le(w + ": T = (W + K) S", ex.relative_residual, o.tol.factorization,
                           "relative, n = " + std::to_string(n)));
    out.push_back(check_lt(w + ": ||K|| < delta", ex.k_norm, ex.delta));
    out.push_back(check_le(w + ": ||K|| within its bound", ex.k_norm, ex.k_bound));
    out.push_back(check_le(w + ": W is a partial isometry", ex.w_partial_isometry_defect, o.tol.factorization));
  }
  return out;
}

std::vector<Check> normality_suite(const SuiteOptions& o, std::size_t n) {
  const FactorizationExample a = factorization_example(ExampleKind::normal, n);
  const FactorizationExample b = factorization_example(ExampleKind::nonnormal, n);
  return {check_le("normal example: ||TT* - T*T|| / ||T||^2", a.normality_defect, o.tol.normal),
          check_gt("nonnormal example: ||TT* - T*T|| / ||T||^2", b.normality_defect, o.tol.nonnormal)};
}

std::vector<Check> volterra_suite(const SuiteOptions& o, std::size_t n_max) {
  const auto rows = norm_sweep(ExampleKind::nonnormal, doubling_sizes(64, n_max));
  const double pi_inv = 1.0 / std::numbers::pi;
  std::size_t increases = 0;
  double c = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    c = std::max(c, static_cast<double>(rows[k].n) * rows[k].error);
    if (k > 0 && rows[k].error >= rows[k - 1].error) ++increases;
  }
  std::ostringstream det;
  det.precision(17);
  det << "||K_" << rows.back().n << "|| = " << rows.back().norm;
  return {check_le("|| K_n || - 1/pi at the largest n", std::abs(rows.back().norm - pi_inv), o.tol.volterra, det.str()),
          check_eq("error increases along the doubling sweep", static_cast<double>(increases), 0.0),
          check_le("max n * error", c, 2.0, "error ~ C / n with C <= 2"),
          check_lt("||K_n|| < 1/2", rows.back().norm, 0.5)};
}

std::vector<Check> rank_one_suite(const SuiteOptions& o, std::size_t n_max) {
  (void)o;
  std::vector<std::size_t> sizes;
  for (std::size_t n = 4; n <= std::min<std::size_t>(64, n_max); ++n) sizes.push_back(n);
  for (std::size_t n = 128; n <= n_max; n *= 2) sizes.push_back(n);
  const auto rows = norm_sweep(ExampleKind::normal, sizes);
  double worst = 0, top = 0;
  for (const auto& r : rows) {
    worst = std::max(worst, r.error * static_cast<double>(r.n) / 2.0);
    top = std::max(top, r.norm);
  }
  return {check_le("max |norm - 1/6| / (2/n)", worst, 1.0, std::to_string(rows.size()) + " sizes from n = 4"),
          check_lt("max norm", top, 1.0 / 3.0)};
}

std::vector<NamedSuite> run_all_suites(const SuiteOptions& o, bool full_discretization) {
  std::vector<NamedSuite> out;
  out.push_back({"quaternion", quaternion_suite(o)});
  out.push_back({"qmatrix", qmatrix_suite(o)});
  out.push_back({"polar", polar_suite(o)});
  out.push_back({"cartesian", cartesian_suite(o)});
  out.push_back({"extension", extension_suite(o)});
  out.push_back({"resolvent", resolvent_suite(o)});
  out.push_back({"spectrum", spectrum_suite(o)});
  out.push_back({"calculus", calculus_suite(o)});
  out.push_back({"riesz", riesz_suite(o)});
  out.push_back({"slice", slice_suite(o)});
  out.push_back({"irreducibility_oracle", irreducibility_oracle_suite(o)});
  out.push_back({"similarity", similarity_suite(o)});
  out.push_back({"extension_irreducibility", extension_irreducibility_suite(o)});
  out.push_back({"factorization", factorization_suite(o)});
  out.push_back({"volterra", volterra_suite(o, full_discretization ? 1024 : 256)});
  out.push_back({"rank_one", rank_one_suite(o)});
  return out;
}

}  // namespace quatcalc::cli
