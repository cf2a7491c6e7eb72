#pragma once

// Chordal geometry on R^n ∪ {∞}: the spherical (chordal) distance q, the
// isometric lift onto the sphere of diameter 1, inversions in spheres, the
// standard automorphisms of the planar unit disk, and the crossing point of
// a chord with the unit sphere used to split an inside/outside pair.

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <utility>

#include "extended_point.hpp"

namespace qcdist {

// q(x,y) = |x-y| / (sqrt(1+|x|^2) sqrt(1+|y|^2)), q(x,∞) = 1/sqrt(1+|x|^2).
// Ranges over [0,1]; equals the Euclidean distance between the lifted points.
inline double spherical_distance(const ExtendedPoint& x, const ExtendedPoint& y) {
  require_same_dim(x, y, "spherical_distance");
  if (x.is_infinity() && y.is_infinity()) return 0.0;
  if (x.is_infinity()) return 1.0 / std::sqrt(1.0 + norm_sq(y));
  if (y.is_infinity()) return 1.0 / std::sqrt(1.0 + norm_sq(x));
  return euclidean_distance(x, y) /
         (std::sqrt(1.0 + norm_sq(x)) * std::sqrt(1.0 + norm_sq(y)));
}

// Stereographic lift into R^{n+1}: x ↦ (x, |x|^2) / (1+|x|^2), ∞ ↦ (0,…,0,1).
// The image lies on the sphere of radius 1/2 about (0,…,0,1/2), and the
// Euclidean distance between two lifted points equals spherical_distance.
inline std::vector<double> stereo_lift(const ExtendedPoint& x) {
  std::vector<double> out(static_cast<std::size_t>(x.dim()) + 1, 0.0);
  if (x.is_infinity()) {
    out.back() = 1.0;
    return out;
  }
  const double s = norm_sq(x);
  const double d = 1.0 + s;
  for (std::size_t i = 0; i < x.coords().size(); ++i) out[i] = x[i] / d;
  out.back() = s / d;
  return out;
}

struct SphereSpec {
  std::vector<double> center;
  double radius;

  SphereSpec(std::vector<double> c, double r) : center(std::move(c)), radius(r) {
    if (center.empty()) throw std::invalid_argument("SphereSpec: empty center");
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw std::invalid_argument("SphereSpec: radius must be positive and finite");
    }
    for (double v : center) {
      if (!std::isfinite(v)) throw std::invalid_argument("SphereSpec: non-finite center");
    }
  }
};

// Inversion in the sphere S(c, r): x ↦ c + r^2 (x-c)/|x-c|^2.  Swaps the
// center with ∞ and fixes the sphere pointwise.  Images beyond the
// coordinate cap are collapsed to ∞.
inline ExtendedPoint invert(const ExtendedPoint& x, const SphereSpec& s) {
  if (static_cast<int>(s.center.size()) != x.dim()) {
    throw std::invalid_argument("invert: sphere/point dimension mismatch");
  }
  if (x.is_infinity()) return ExtendedPoint(s.center);
  std::vector<double> d(x.coords());
  double nsq = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] -= s.center[i];
    nsq += d[i] * d[i];
  }
  if (nsq == 0.0) return ExtendedPoint::infinity(x.dim());
  const double scale = s.radius * s.radius / nsq;
  double big = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = s.center[i] + scale * d[i];
    big = std::max(big, std::fabs(d[i]));
  }
  if (big > kMagnitudeCap) return ExtendedPoint::infinity(x.dim());
  return ExtendedPoint(std::move(d));
}

// Inversion in the unit sphere: an isometry of the spherical metric.
inline ExtendedPoint unit_inversion(const ExtendedPoint& x) {
  return invert(x, SphereSpec(std::vector<double>(static_cast<std::size_t>(x.dim()), 0.0), 1.0));
}

// Planar Möbius automorphism of the unit disk, z ↦ (z-a)/(1 - conj(a) z).
// Sends a to 0, preserves the unit circle, and on the closed disk moves
// points by at most a (1+|a|)/(1-|a|) change of Euclidean distance.
class DiskAutomorphism {
 public:
  explicit DiskAutomorphism(std::complex<double> a) : a_(a) {
    if (!(std::abs(a) < 1.0)) {
      throw std::invalid_argument("DiskAutomorphism: parameter must satisfy |a| < 1");
    }
  }

  std::complex<double> parameter() const { return a_; }

  double bilipschitz_constant() const { return (1.0 + std::abs(a_)) / (1.0 - std::abs(a_)); }

  ExtendedPoint apply(const ExtendedPoint& x) const {
    if (x.dim() != 2) throw std::invalid_argument("DiskAutomorphism: planar points only");
    if (a_ == std::complex<double>(0.0, 0.0)) return x;  // identity, exactly
    if (x.is_infinity()) {
      const std::complex<double> w = -1.0 / std::conj(a_);
      return ExtendedPoint({w.real(), w.imag()});
    }
    const std::complex<double> z(x[0], x[1]);
    const std::complex<double> den = 1.0 - std::conj(a_) * z;
    if (std::abs(den) == 0.0) return ExtendedPoint::infinity(2);
    const std::complex<double> w = (z - a_) / den;
    if (std::max(std::fabs(w.real()), std::fabs(w.imag())) > kMagnitudeCap) {
      return ExtendedPoint::infinity(2);
    }
    return ExtendedPoint({w.real(), w.imag()});
  }

 private:
  std::complex<double> a_;
};

namespace detail {

// Intersections of the line through a in direction u (|u|=1) with the unit
// sphere, found from the stable form of t^2 + 2(a·u)t + (|a|^2-1) = 0.
// Returns the two crossing parameters with their points, forward one first.
struct ChordCrossing {
  double t;
  std::vector<double> point;
};

inline std::pair<ChordCrossing, ChordCrossing> line_sphere_points(
    const std::vector<double>& a, const std::vector<double>& u) {
  double b = 0.0, c = -1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    b += a[i] * u[i];
    c += a[i] * a[i];
  }
  const double disc = b * b - c;
  if (!(disc >= 0.0)) {
    throw std::invalid_argument("chord_waypoint: line misses the unit sphere");
  }
  const double rt = std::sqrt(disc);
  // Large-magnitude root from same-signed terms, the other from the product
  // of roots t1*t2 = c, which avoids cancellation when |c| is small.
  const double t_big = (b >= 0.0) ? (-b - rt) : (-b + rt);
  const double t_other = (t_big == 0.0) ? 0.0 : c / t_big;
  auto at = [&](double t) {
    ChordCrossing cr{t, a};
    double nn = 0.0;
    for (std::size_t i = 0; i < cr.point.size(); ++i) {
      cr.point[i] += t * u[i];
      nn += cr.point[i] * cr.point[i];
    }
    // Snap onto the sphere; the quadratic already puts us within rounding.
    nn = std::sqrt(nn);
    if (nn > 0.0) {
      for (double& v : cr.point) v /= nn;
    }
    return cr;
  };
  ChordCrossing c1 = at(std::max(t_big, t_other));
  ChordCrossing c2 = at(std::min(t_big, t_other));
  return {std::move(c1), std::move(c2)};
}

}  // namespace detail

// The point w with |w| = 1 on the line through x and y that minimises
// q(x,w) + q(w,y); requires |x| < 1 and either |y| > 1 or y = ∞, so the
// chord genuinely crosses the sphere.  Satisfies
//   q(x,w) + q(w,y) <= sqrt(2) q(x,y),
// with equality approached as x → 0, y → ∞.  Note the minimiser need not
// lie between x and y: for nearly antipodal pairs the crossing point on the
// far side of the sphere gives a smaller sum of legs.
inline ExtendedPoint chord_waypoint(const ExtendedPoint& x, const ExtendedPoint& y) {
  require_same_dim(x, y, "chord_waypoint");
  if (x.is_infinity() || !(norm(x) < 1.0)) {
    throw std::invalid_argument("chord_waypoint: first point must satisfy |x| < 1");
  }
  if (!y.is_infinity() && !(norm(y) > 1.0)) {
    throw std::invalid_argument("chord_waypoint: second point must satisfy |y| > 1 or y = ∞");
  }

  std::vector<double> u;
  if (y.is_infinity()) {
    // The "line through x and ∞" is the ray direction of x itself; for x = 0
    // every direction works and we fix the first axis to stay deterministic.
    u = x.coords();
    const double nu = norm(x);
    if (nu == 0.0) {
      u.assign(static_cast<std::size_t>(x.dim()), 0.0);
      u[0] = 1.0;
    } else {
      for (double& v : u) v /= nu;
    }
  } else {
    u = y.coords();
    double nn = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] -= x[i];
      nn += u[i] * u[i];
    }
    nn = std::sqrt(nn);
    for (double& v : u) v /= nn;
  }

  auto [fwd, bwd] = detail::line_sphere_points(x.coords(), u);
  const ExtendedPoint p1{std::move(fwd.point)}, p2{std::move(bwd.point)};
  const double s1 = spherical_distance(x, p1) + spherical_distance(p1, y);
  const double s2 = spherical_distance(x, p2) + spherical_distance(p2, y);
  // Ties break toward the forward crossing, so the pair (0, ∞) yields e_1.
  return (s1 <= s2) ? p1 : p2;
}

}  // namespace qcdist
