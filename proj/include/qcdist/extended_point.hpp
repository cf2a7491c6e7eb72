#pragma once

// Points of the one-point compactification R^n ∪ {∞}.  A point is either a
// finite coordinate vector or the marker ∞; it always knows its dimension.
// Finite coordinates are capped at 1e150 so squared norms and products of
// chordal denominators stay comfortably inside double range.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcdist {

inline constexpr double kMagnitudeCap = 1e150;

class ExtendedPoint {
 public:
  explicit ExtendedPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) {
      throw std::invalid_argument("ExtendedPoint: empty coordinate vector");
    }
    for (double c : coords_) {
      if (!std::isfinite(c)) {
        throw std::invalid_argument("ExtendedPoint: non-finite coordinate");
      }
      if (std::fabs(c) > kMagnitudeCap) {
        throw std::invalid_argument("ExtendedPoint: coordinate magnitude exceeds 1e150 cap");
      }
    }
  }

  static ExtendedPoint infinity(int dim) {
    if (dim < 1) throw std::invalid_argument("ExtendedPoint: dimension must be positive");
    ExtendedPoint p;
    p.dim_if_infinite_ = dim;
    return p;
  }

  static ExtendedPoint zero(int dim) { return ExtendedPoint(std::vector<double>(static_cast<std::size_t>(dim), 0.0)); }

  static ExtendedPoint unit(int dim, int axis) {
    std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
    c.at(static_cast<std::size_t>(axis)) = 1.0;
    return ExtendedPoint(std::move(c));
  }

  bool is_infinity() const { return coords_.empty(); }

  int dim() const {
    return is_infinity() ? dim_if_infinite_ : static_cast<int>(coords_.size());
  }

  const std::vector<double>& coords() const {
    if (is_infinity()) throw std::logic_error("ExtendedPoint: ∞ has no coordinates");
    return coords_;
  }

  double operator[](std::size_t i) const { return coords().at(i); }

 private:
  ExtendedPoint() = default;
  std::vector<double> coords_;  // empty ⇔ the point is ∞
  int dim_if_infinite_ = 0;
};

inline double norm_sq(const ExtendedPoint& x) {
  double s = 0.0;
  for (double c : x.coords()) s += c * c;
  return s;
}

inline double norm(const ExtendedPoint& x) { return std::sqrt(norm_sq(x)); }

inline bool operator==(const ExtendedPoint& a, const ExtendedPoint& b) {
  if (a.dim() != b.dim()) return false;
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
  return a.coords() == b.coords();
}

inline bool operator!=(const ExtendedPoint& a, const ExtendedPoint& b) { return !(a == b); }

inline void require_same_dim(const ExtendedPoint& a, const ExtendedPoint& b, const char* who) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

// Euclidean distance; ∞ is at distance ∞ from every finite point and 0 from itself.
inline double euclidean_distance(const ExtendedPoint& a, const ExtendedPoint& b) {
  require_same_dim(a, b, "euclidean_distance");
  if (a.is_infinity() || b.is_infinity()) {
    return (a.is_infinity() && b.is_infinity()) ? 0.0 : std::numeric_limits<double>::infinity();
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.coords().size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace qcdist
