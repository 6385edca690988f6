#include "quatcalc/quaternion.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>

#include "quatcalc/error.hpp"

namespace quatcalc {

Quaternion Quaternion::inverse() const {
  const double n2 = norm2();
  if (n2 == 0.0) throw DomainError("inverse of the zero quaternion");
  return conj() * (1.0 / n2);
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '[' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ']';
}

ImaginaryUnit::ImaginaryUnit(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("imaginary unit must be a nonzero finite 3-vector");
  x_ = x / n;
  y_ = y / n;
  z_ = z / n;
}

ImaginaryUnit ImaginaryUnit::anticommuting() const {
  // Units orthogonal to m anticommute with it. n = e x m with e = k (or i
  // when m is nearly parallel to k); for m = i this gives k x i = j.
  if (std::abs(z_) < 0.9) return ImaginaryUnit(-y_, x_, 0.0);
  return ImaginaryUnit(0.0, -z_, y_);
}

Quaternion to_slice(std::complex<double> c, const ImaginaryUnit& m) {
  return {c.real(), m.x() * c.imag(), m.y() * c.imag(), m.z() * c.imag()};
}

Sphere sphere_of(const Quaternion& q) { return {q.w, q.imag_norm()}; }

Quaternion slice_embed(const Sphere& s, const ImaginaryUnit& m, int sign) {
  return to_slice({s.re, (sign < 0 ? -1.0 : 1.0) * s.rad}, m);
}

double sphere_distance(const Sphere& a, const Sphere& b) { return std::hypot(a.re - b.re, a.rad - b.rad); }

double distance_to_set(const Sphere& s, std::span<const Sphere> set) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : set) best = std::min(best, sphere_distance(s, t));
  return best;
}

double hausdorff_distance(std::span<const Sphere> a, std::span<const Sphere> b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  double h = 0.0;
  for (const auto& s : a) h = std::max(h, distance_to_set(s, b));
  for (const auto& s : b) h = std::max(h, distance_to_set(s, a));
  return h;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<SphereCluster> cluster_spheres(std::span<const std::complex<double>> points, double tol) {
  const std::size_t n = points.size();
  DisjointSets sets(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::complex<double> fa{points[a].real(), std::abs(points[a].imag())};
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::complex<double> fb{points[b].real(), std::abs(points[b].imag())};
      if (std::abs(fa - fb) <= tol) sets.unite(a, b);
    }
  }

  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t a = 0; a < n; ++a) groups[sets.find(a)].push_back(a);

  std::vector<SphereCluster> out;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    double min_abs_im = std::numeric_limits<double>::infinity();
    for (auto idx : g) min_abs_im = std::min(min_abs_im, std::abs(points[idx].imag()));

    SphereCluster c;
    c.count = g.size();
    if (min_abs_im <= tol) {
      double re = 0.0, im = 0.0;
      for (auto idx : g) {
        re += points[idx].real();
        im += points[idx].imag();
      }
      re /= static_cast<double>(g.size());
      im /= static_cast<double>(g.size());
      if (std::abs(im) > tol) throw ValidationError("point set is not closed under complex conjugation");
      c.sphere = {re, 0.0};
    } else {
      std::complex<double> upper{0.0, 0.0}, lower{0.0, 0.0};
      std::size_t nu = 0, nl = 0;
      for (auto idx : g) {
        if (points[idx].imag() > 0) {
          upper += points[idx];
          ++nu;
        } else {
          lower += points[idx];
          ++nl;
        }
      }
      if (nu != nl) throw ValidationError("point set is not closed under complex conjugation");
      upper /= static_cast<double>(nu);
      lower /= static_cast<double>(nl);
      if (std::abs(upper - std::conj(lower)) > tol)
        throw ValidationError("point set is not closed under complex conjugation");
      c.sphere = {upper.real(), upper.imag()};
    }
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const SphereCluster& a, const SphereCluster& b) {
    return a.sphere.re != b.sphere.re ? a.sphere.re < b.sphere.re : a.sphere.rad < b.sphere.rad;
  });
  return out;
}

std::vector<Sphere> circularize(std::span<const std::complex<double>> points, double tol) {
  std::vector<Sphere> out;
  for (const auto& c : cluster_spheres(points, tol)) out.push_back(c.sphere);
  return out;
}

std::vector<std::complex<double>> sphere_traces(std::span<const Sphere> spheres) {
  std::vector<std::complex<double>> out;
  out.reserve(2 * spheres.size());
  for (const auto& s : spheres) {
    out.emplace_back(s.re, s.rad);
    out.emplace_back(s.re, -s.rad);
  }
  return out;
}

}  // namespace quatcalc
