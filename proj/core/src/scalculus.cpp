#include "quatcalc/scalculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "quatcalc/error.hpp"
#include "quatcalc/parallel.hpp"

namespace quatcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trace_distance(const Sphere& s, double c) { return std::hypot(s.re - c, s.rad); }

double r_in(const std::vector<Sphere>& group, double c) {
  double r = 0.0;
  for (const auto& s : group) r = std::max(r, trace_distance(s, c));
  return r;
}

double r_out(const std::vector<Sphere>& other, double c) {
  double r = kInf;
  for (const auto& s : other) r = std::min(r, trace_distance(s, c));
  return r;
}

std::string describe(const std::vector<Sphere>& group) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < group.size(); ++k) os << (k ? ", " : "") << '(' << group[k].re << ", " << group[k].rad << ')';
  os << '}';
  return os.str();
}

Circle fit_circle(const std::vector<Sphere>& group, const std::vector<Sphere>& other, double separation) {
  double lo = kInf, hi = -kInf;
  for (const auto& s : group) {
    lo = std::min(lo, s.re);
    hi = std::max(hi, s.re);
  }
  Circle c;
  if (other.empty()) {
    c.center = 0.5 * (lo + hi);
    const double rin = r_in(group, c.center);
    c.radius = rin + std::max(rin, 0.5);
    c.inner_clearance = c.radius - rin;
    c.outer_clearance = kInf;
    c.convergence_ratio = rin / c.radius;
    return c;
  }

  auto quality = [&](double x) {
    const double rin = r_in(group, x);
    const double rout = r_out(other, x);
    return rin > 0.0 ? rout / rin : kInf;
  };
  double best = lo;
  if (hi > lo) {
    constexpr int kSamples = 400;
    double best_q = -kInf;
    for (int k = 0; k <= kSamples; ++k) {
      const double x = lo + (hi - lo) * k / kSamples;
      const double q = quality(x);
      if (q > best_q) {
        best_q = q;
        best = x;
      }
    }
    // Golden-section refinement inside the bracketing samples.
    double a = std::max(lo, best - (hi - lo) / kSamples), b = std::min(hi, best + (hi - lo) / kSamples);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 80; ++it) {
      const double x1 = b - g * (b - a), x2 = a + g * (b - a);
      if (quality(x1) >= quality(x2)) b = x2;
      else a = x1;
    }
    if (quality(0.5 * (a + b)) > quality(best)) best = 0.5 * (a + b);
  }
  c.center = best;
  const double rin = r_in(group, best);
  const double rout = r_out(other, best);
  if (!(rin < rout)) {
    std::ostringstream msg;
    msg << "no circle centered on the real axis encloses " << describe(group)
        << " while excluding the remaining spheres (separation " << separation << ")";
    throw SeparationError(msg.str(), separation);
  }
  c.radius = std::sqrt(std::max(rin, rout / 9.0) * rout);
  c.inner_clearance = c.radius - rin;
  c.outer_clearance = rout - c.radius;
  c.convergence_ratio = std::max(rin / c.radius, c.radius / rout);
  return c;
}

bool disks_meet(const Circle& a, const Circle& b) { return std::abs(a.center - b.center) <= a.radius + b.radius; }

}  // namespace

bool Contour::encloses(const Sphere& s) const {
  for (const auto& c : circles)
    if (trace_distance(s, c.center) < c.radius) return true;
  return false;
}

Contour build_contour(const std::vector<Sphere>& sigma, const std::vector<Sphere>& other, const ImaginaryUnit& m,
                      std::size_t nodes) {
  if (sigma.empty()) throw ValidationError("contour needs at least one enclosed sphere");
  if (nodes < kMinNodes) throw ValidationError("at least 16 nodes per circle are required");

  double separation = kInf, scale = 1.0;
  for (const auto& s : sigma) {
    scale = std::max(scale, std::hypot(s.re, s.rad));
    separation = std::min(separation, distance_to_set(s, other));
  }
  for (const auto& s : other) scale = std::max(scale, std::hypot(s.re, s.rad));
  if (separation <= 1e-12 * scale)
    throw SeparationError("enclosed and excluded sphere sets overlap", separation);

  std::vector<std::vector<Sphere>> groups;
  for (const auto& s : sigma) groups.push_back({s});
  std::vector<Circle> circles;
  for (;;) {
    circles.clear();
    for (const auto& g : groups) circles.push_back(fit_circle(g, other, separation));
    bool merged = false;
    for (std::size_t a = 0; a < groups.size() && !merged; ++a)
      for (std::size_t b = a + 1; b < groups.size() && !merged; ++b)
        if (disks_meet(circles[a], circles[b])) {
          groups[a].insert(groups[a].end(), groups[b].begin(), groups[b].end());
          groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(b));
          merged = true;
        }
    if (!merged) break;
  }
  std::sort(circles.begin(), circles.end(), [](const Circle& a, const Circle& b) { return a.center < b.center; });

  Contour out;
  out.m = m;
  out.circles = std::move(circles);
  out.nodes = nodes;
  out.separation = separation;
  return out;
}

Contour merge_contours(const Contour& a, const Contour& b) {
  const Quaternion ma = a.m.as_quaternion(), mb = b.m.as_quaternion();
  if ((ma - mb).norm() > 1e-14) throw ValidationError("contours live in different slices");
  if (a.nodes != b.nodes) throw ValidationError("contours use different node counts");
  for (const auto& x : a.circles)
    for (const auto& y : b.circles)
      if (disks_meet(x, y)) throw SeparationError("contour disks intersect", std::abs(x.center - y.center) - x.radius - y.radius);
  Contour out = a;
  out.circles.insert(out.circles.end(), b.circles.begin(), b.circles.end());
  std::sort(out.circles.begin(), out.circles.end(), [](const Circle& x, const Circle& y) { return x.center < y.center; });
  out.separation = std::min(a.separation, b.separation);
  return out;
}

std::vector<QuadratureNode> quadrature_nodes(const Contour& c) {
  std::vector<QuadratureNode> out;
  out.reserve(c.circles.size() * c.nodes);
  const double n = static_cast<double>(c.nodes);
  for (const auto& circle : c.circles)
    for (std::size_t k = 0; k < c.nodes; ++k) {
      // Half-step offset keeps nodes off the real axis and the node set
      // closed under conjugation.
      const double theta = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / n;
      const Quaternion e = to_slice({std::cos(theta), std::sin(theta)}, c.m);
      out.push_back({circle.center + circle.radius * e, (circle.radius / n) * e});
    }
  return out;
}

SliceFunction constant_function(double value) {
  return {[value](const Quaternion&) { return Quaternion(value); }, true, "constant"};
}

SliceFunction polynomial_function(std::vector<double> coeffs) {
  return {[coeffs = std::move(coeffs)](const Quaternion& q) {
            Quaternion acc;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * q + Quaternion(*it);
            return acc;
          },
          true, "polynomial"};
}

SliceFunction characteristic_function(const Contour& sigma) {
  return {[circles = sigma.circles](const Quaternion& q) {
            const Sphere s = sphere_of(q);
            for (const auto& c : circles)
              if (trace_distance(s, c.center) <= c.radius * (1.0 + 1e-12)) return Quaternion(1.0);
            return Quaternion(0.0);
          },
          true, "characteristic"};
}

SliceFunction hat(const SliceFunction& f) {
  return {[g = f.eval](const Quaternion& q) { return g(q.conj()).conj(); }, f.intrinsic, "hat(" + f.name + ")"};
}

QMatrix func_calc(const SliceFunction& f, Side side, const QMatrix& t, const Contour& c) {
  if (!t.is_square()) throw ValidationError("operator must be square");
  const SphericalSpectrum spec = spherical_spectrum(t);
  const auto nodes = quadrature_nodes(c);
  std::vector<QMatrix> terms(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t k) {
    const Quaternion fs = f.eval(nodes[k].s);
    if (fs == Quaternion{}) return;
    const SResolventSample r = s_resolvent(t, spec, nodes[k].s);
    terms[k] = side == Side::left ? r.left * (nodes[k].weight * fs) : (fs * nodes[k].weight) * r.right;
  });
  QMatrix sum(t.rows(), t.cols());
  for (const auto& term : terms)
    if (!term.empty()) sum += term;
  return sum;
}

QMatrix riesz_projection(const QMatrix& t, const Contour& c) {
  return func_calc(constant_function(1.0), Side::right, t, c);
}

double calc_adjoint_check(const SliceFunction& f, const QMatrix& t, const Contour& c, Side side) {
  const QMatrix lhs = func_calc(f, side, t, c).adjoint();
  const QMatrix rhs = func_calc(hat(f), side, t.adjoint(), c);
  return op_norm(lhs - rhs);
}

std::vector<Sphere> match_spheres(const SphericalSpectrum& spec, const std::vector<Sphere>& requested, double tol) {
  std::vector<Sphere> out;
  std::vector<bool> used(spec.size(), false);
  for (const auto& r : requested) {
    std::size_t hits = 0, idx = 0;
    for (std::size_t k = 0; k < spec.size(); ++k)
      if (sphere_distance(r, spec.spheres[k]) <= tol) {
        ++hits;
        idx = k;
      }
    std::ostringstream where;
    where << '(' << r.re << ", " << r.rad << ')';
    if (hits == 0) throw PartitionError("sphere " + where.str() + " is not in the S-spectrum");
    if (hits > 1) throw PartitionError("sphere " + where.str() + " matches several spectral spheres");
    if (used[idx]) throw PartitionError("sphere " + where.str() + " is listed twice");
    used[idx] = true;
    out.push_back(spec.spheres[idx]);
  }
  return out;
}

namespace {

QMatrix projection_range(const QMatrix& p) {
  const double n = op_norm(p);
  if (n < 0.5) return QMatrix(p.rows(), 0);
  return range_basis(p, 0.5 / n);
}

double hausdorff(const SphericalSpectrum& s, const std::vector<Sphere>& target) {
  return hausdorff_distance(s.spheres, target);
}

}  // namespace

RieszPair riesz_decompose(const QMatrix& t, const std::vector<Sphere>& sigma, const std::vector<Sphere>& tau,
                          std::size_t nodes, const ImaginaryUnit& m, const RieszTolerances& tol) {
  if (!t.is_square()) throw ValidationError("operator must be square");
  if (sigma.empty()) throw PartitionError("sigma is empty");
  if (tau.empty()) throw PartitionError("tau is empty");
  const SphericalSpectrum spec = spherical_spectrum(t);
  const double match_tol = spec.tol * std::max(1.0, spec.norm);
  std::vector<Sphere> all = sigma;
  all.insert(all.end(), tau.begin(), tau.end());
  const auto matched = match_spheres(spec, all, match_tol);
  if (matched.size() != spec.size()) throw PartitionError("sigma and tau do not cover the S-spectrum");

  RieszPair out;
  out.sigma.assign(matched.begin(), matched.begin() + static_cast<std::ptrdiff_t>(sigma.size()));
  out.tau.assign(matched.begin() + static_cast<std::ptrdiff_t>(sigma.size()), matched.end());

  const std::size_t n = t.rows();
  bool have_sigma = true, have_tau = true;
  std::string sigma_error, tau_error;
  double separation = 0.0;
  try {
    out.contour_sigma = build_contour(out.sigma, out.tau, m, nodes);
  } catch (const SeparationError& e) {
    have_sigma = false;
    sigma_error = e.what();
    separation = e.separation();
  }
  try {
    out.contour_tau = build_contour(out.tau, out.sigma, m, nodes);
  } catch (const SeparationError& e) {
    have_tau = false;
    tau_error = e.what();
    separation = e.separation();
  }
  if (!have_sigma && !have_tau) throw SeparationError(sigma_error + "; " + tau_error, separation);

  if (have_sigma) out.p_sigma = riesz_projection(t, out.contour_sigma);
  if (have_tau) out.p_tau = riesz_projection(t, out.contour_tau);
  const QMatrix id = QMatrix::identity(n);
  if (!have_sigma) {
    out.p_sigma = id - out.p_tau;
    out.sigma_from_complement = true;
  }
  if (!have_tau) {
    out.p_tau = id - out.p_sigma;
    out.tau_from_complement = true;
  }

  auto& r = out.residuals;
  const double tn = std::max(op_norm(t), 1e-300);
  r.idempotent_sigma = op_norm(out.p_sigma * out.p_sigma - out.p_sigma);
  r.idempotent_tau = op_norm(out.p_tau * out.p_tau - out.p_tau);
  r.self_adjoint_sigma = op_norm(out.p_sigma.adjoint() - out.p_sigma);
  r.self_adjoint_tau = op_norm(out.p_tau.adjoint() - out.p_tau);
  r.sum = op_norm(out.p_sigma + out.p_tau - id);
  r.product = op_norm(out.p_sigma * out.p_tau);
  r.commute_sigma = op_norm(t * out.p_sigma - out.p_sigma * t) / tn;
  r.commute_tau = op_norm(t * out.p_tau - out.p_tau * t) / tn;

  out.basis_sigma = projection_range(out.p_sigma);
  out.basis_tau = projection_range(out.p_tau);
  out.restricted_sigma = out.basis_sigma.adjoint() * t * out.basis_sigma;
  out.restricted_tau = out.basis_tau.adjoint() * t * out.basis_tau;
  out.spectrum_sigma = spherical_spectrum(out.restricted_sigma);
  out.spectrum_tau = spherical_spectrum(out.restricted_tau);
  r.hausdorff_sigma = hausdorff(out.spectrum_sigma, out.sigma);
  r.hausdorff_tau = hausdorff(out.spectrum_tau, out.tau);

  out.normality_defect = normality_defect(t);
  out.self_adjoint_checked = out.normality_defect <= tol.normal;

  auto check = [&](double value, double limit, const char* what) {
    if (!(value <= limit)) {
      std::ostringstream msg;
      msg << what << " residual " << value << " exceeds " << limit;
      out.failures.push_back(msg.str());
    }
  };
  check(r.idempotent_sigma, tol.step, "Step I idempotence (sigma)");
  check(r.idempotent_tau, tol.step, "Step I idempotence (tau)");
  if (out.self_adjoint_checked) {
    check(r.self_adjoint_sigma, tol.step, "Step I self-adjointness (sigma)");
    check(r.self_adjoint_tau, tol.step, "Step I self-adjointness (tau)");
  }
  check(r.sum, tol.step, "Step II sum");
  check(r.product, tol.step, "Step II product");
  check(r.commute_sigma, tol.step, "Step III commutation (sigma)");
  check(r.commute_tau, tol.step, "Step III commutation (tau)");
  check(r.hausdorff_sigma, tol.spectrum, "Step IV restricted spectrum (sigma)");
  check(r.hausdorff_tau, tol.spectrum, "Step IV restricted spectrum (tau)");

  std::size_t mult_sigma = 0;
  for (std::size_t k = 0; k < spec.size(); ++k)
    if (std::find(out.sigma.begin(), out.sigma.end(), spec.spheres[k]) != out.sigma.end())
      mult_sigma += spec.multiplicities[k];
  if (out.basis_sigma.cols() != mult_sigma || out.basis_tau.cols() != n - mult_sigma)
    out.failures.push_back("range dimensions do not match the partition multiplicities");
  out.certified = out.failures.empty();
  return out;
}

RieszPair riesz_decompose(const QMatrix& t, const std::vector<Sphere>& sigma, double match_tol, std::size_t nodes,
                          const ImaginaryUnit& m, const RieszTolerances& tol) {
  if (!t.is_square()) throw ValidationError("operator must be square");
  const SphericalSpectrum spec = spherical_spectrum(t);
  const auto chosen = match_spheres(spec, sigma, match_tol);
  std::vector<Sphere> tau;
  for (const auto& s : spec.spheres)
    if (std::find(chosen.begin(), chosen.end(), s) == chosen.end()) tau.push_back(s);
  if (chosen.empty()) throw PartitionError("sigma is empty");
  if (tau.empty()) throw PartitionError("tau is empty: sigma covers the whole S-spectrum");
  return riesz_decompose(t, chosen, tau, nodes, m, tol);
}

}  // namespace quatcalc
