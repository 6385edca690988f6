#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace quatcalc {

/// Real quaternion q = w + x i + y j + z k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_) : w(w_) {}  // NOLINT: reals embed implicitly
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr double real() const { return w; }
  constexpr Quaternion imag() const { return {0.0, x, y, z}; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }

  /// Multiplicative inverse; throws DomainError for q = 0.
  Quaternion inverse() const;

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

/// Hamilton product (i^2 = j^2 = k^2 = ijk = -1).
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// Purely imaginary unit quaternion m (m^2 = -1). Always normalized.
class ImaginaryUnit {
 public:
  /// Normalizes (x, y, z); throws DomainError for the zero vector.
  ImaginaryUnit(double x, double y, double z);

  static ImaginaryUnit i() { return {1.0, 0.0, 0.0}; }
  static ImaginaryUnit j() { return {0.0, 1.0, 0.0}; }
  static ImaginaryUnit k() { return {0.0, 0.0, 1.0}; }

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  Quaternion as_quaternion() const { return {0.0, x_, y_, z_}; }

  /// A unit n with m n = -n m. For m = i this is j.
  ImaginaryUnit anticommuting() const;

 private:
  double x_, y_, z_;
};

/// Element alpha + m beta of the slice C_m.
Quaternion to_slice(std::complex<double> c, const ImaginaryUnit& m = ImaginaryUnit::i());

/// Similarity class [q] = {p : re p = re q, |im p| = |im q|}.
struct Sphere {
  double re = 0.0;
  double rad = 0.0;

  friend bool operator==(const Sphere&, const Sphere&) = default;
};

Sphere sphere_of(const Quaternion& q);

/// re + m (sign * rad); sphere_of(result) == s.
Quaternion slice_embed(const Sphere& s, const ImaginaryUnit& m = ImaginaryUnit::i(), int sign = +1);

/// Euclidean distance in the (re, rad) half-plane, which is also the
/// distance in H between the two spheres.
double sphere_distance(const Sphere& a, const Sphere& b);

/// Distance from a sphere to the nearest member of a set (infinity if empty).
double distance_to_set(const Sphere& s, std::span<const Sphere> set);

/// Hausdorff distance between two finite sphere sets.
double hausdorff_distance(std::span<const Sphere> a, std::span<const Sphere> b);

/// A cluster of complex points folded into one sphere.
struct SphereCluster {
  Sphere sphere;
  std::size_t count = 0;  ///< number of input points (both conjugates) absorbed
};

/// Groups a conjugation-symmetric multiset of complex points into spheres.
/// Points are single-linkage clustered within `tol`; a cluster straddling the
/// real axis becomes a real sphere (rad = 0), otherwise the sphere is read off
/// the centroid of its upper-half-plane cluster. Sorted by (re, rad).
/// Throws ValidationError if the input is not conjugation symmetric within tol.
std::vector<SphereCluster> cluster_spheres(std::span<const std::complex<double>> points, double tol);

inline constexpr double kSphereTol = 1e-9;

/// Circularization: the set of spheres {(Re z, |Im z|)} of a conjugation
/// symmetric complex set, deduplicated within tol.
std::vector<Sphere> circularize(std::span<const std::complex<double>> points, double tol = kSphereTol);

/// Both C_i traces re +- i rad of every sphere.
std::vector<std::complex<double>> sphere_traces(std::span<const Sphere> spheres);

}  // namespace quatcalc
