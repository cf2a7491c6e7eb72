#pragma once

// Deterministic sampling.  Every random draw is addressed by
// (seed, stream, index), so results are bit-identical across runs and
// independent of evaluation order; no global RNG state exists anywhere.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <utility>
#include <vector>

#include "extended_point.hpp"

namespace qcdist {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class IndexedRng {
 public:
  IndexedRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    // Fold the address into the state with two scrambling rounds per word,
    // so adjacent (stream, index) pairs decorrelate.
    state_ = seed;
    splitmix64(state_);
    state_ ^= 0x6C62272E07BB0142ULL ^ stream;
    splitmix64(state_);
    state_ ^= 0x5851F42D4C957F2DULL ^ index;
    splitmix64(state_);
  }

  std::uint64_t bits() { return splitmix64(state_); }

  // Uniform on [0, 1), 53-bit resolution.
  double u01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  // Standard normal via Box–Muller (one value per call; independence across
  // calls matters more here than squeezing both outputs).
  double gaussian() {
    const double u1 = 1.0 - u01();  // in (0, 1]
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

enum class RegionKind {
  unit_ball,       // open unit ball of R^n
  ball,            // open ball of radius `radius`
  split_pair,      // pairs with |x| < 1 and |y| > 1 (or y = ∞)
  sphere,          // all of R^n ∪ {∞}, chordally uniform
  real_line,       // R^1 ∪ {∞}
  positive_axis,   // [0, ∞) in R^1
};

struct Region {
  RegionKind kind = RegionKind::sphere;
  int dim = 2;
  double radius = 1.0;
};

struct SampleConfig {
  std::uint64_t seed = 20210927;
  long count = 10000;
  Region region;
  int refinement_steps = 0;  // pattern-search rounds after the random scan
};

namespace detail {

inline std::vector<double> gaussian_vec(IndexedRng& rng, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& c : v) c = rng.gaussian();
  return v;
}

}  // namespace detail

// Uniform point of the open ball of radius R (rejection-free: gaussian
// direction, radius from the n-th root of a uniform variate).
inline ExtendedPoint sample_ball_point(IndexedRng& rng, int n, double R = 1.0) {
  std::vector<double> v = detail::gaussian_vec(rng, n);
  double nn = 0.0;
  for (double c : v) nn += c * c;
  nn = std::sqrt(nn);
  const double r = R * std::pow(rng.u01(), 1.0 / n);
  if (nn == 0.0) return ExtendedPoint::zero(n);
  for (double& c : v) c *= r / nn;
  return ExtendedPoint(std::move(v));
}

// Chordally uniform point of R^n ∪ {∞}: a uniform direction on the lifted
// sphere pulled back through stereographic projection; ∞ itself appears
// with probability p_inf.
inline ExtendedPoint sample_sphere_point(IndexedRng& rng, int n, double p_inf) {
  if (rng.u01() < p_inf) return ExtendedPoint::infinity(n);
  std::vector<double> v = detail::gaussian_vec(rng, n + 1);
  double nn = 0.0;
  for (double c : v) nn += c * c;
  nn = std::sqrt(nn);
  if (nn == 0.0) return ExtendedPoint::zero(n);
  // Lifted coordinates: s = (v_1..v_n, v_{n+1}+nn)/(2 nn) lies on the
  // diameter-1 sphere; inverse stereographic sends it to x_i = s_i/(1-s_last).
  const double denom = 0.5 - 0.5 * v.back() / nn;  // 1 - s_last
  if (denom < 1e-12) return ExtendedPoint::infinity(n);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = 0.5 * v[static_cast<std::size_t>(i)] / nn / denom;
  }
  for (double c : x) {
    if (std::fabs(c) > kMagnitudeCap) return ExtendedPoint::infinity(n);
  }
  return ExtendedPoint(std::move(x));
}

// Point of R^1 ∪ {∞} with a heavy-tailed (Cauchy) coordinate, which is
// exactly the chordally uniform distribution on the circle.
inline ExtendedPoint sample_line_point(IndexedRng& rng, double p_inf) {
  if (rng.u01() < p_inf) return ExtendedPoint::infinity(1);
  const double t = std::tan(std::numbers::pi * (rng.u01() - 0.5));
  if (std::fabs(t) > kMagnitudeCap) return ExtendedPoint::infinity(1);
  return ExtendedPoint({t});
}

// Sample a pair addressed by `index` from the configured region.  A few
// deterministic anchor pairs occupy the lowest indices so that known
// extremal configurations are always part of the scan:
//   sphere / real_line: index 0 = (0, ∞);
//   unit_ball / ball:   index 0 = (R/2 e_1, 0);
//   split_pair:         index 0 = (0, ∞).
inline std::pair<ExtendedPoint, ExtendedPoint> sample_region_pair(const SampleConfig& cfg,
                                                                  long index) {
  const Region& reg = cfg.region;
  const double p_inf = 1.0 / static_cast<double>(cfg.count > 0 ? cfg.count : 1);
  IndexedRng rng(cfg.seed, 0x7061697273ULL /* "pairs" */, static_cast<std::uint64_t>(index));
  switch (reg.kind) {
    case RegionKind::unit_ball:
    case RegionKind::ball: {
      const double R = (reg.kind == RegionKind::unit_ball) ? 1.0 : reg.radius;
      if (index == 0) {
        std::vector<double> c(static_cast<std::size_t>(reg.dim), 0.0);
        c[0] = 0.5 * R;
        return {ExtendedPoint(std::move(c)), ExtendedPoint::zero(reg.dim)};
      }
      ExtendedPoint x = sample_ball_point(rng, reg.dim, R);
      ExtendedPoint y = sample_ball_point(rng, reg.dim, R);
      return {std::move(x), std::move(y)};
    }
    case RegionKind::split_pair: {
      if (index == 0) {
        return {ExtendedPoint::zero(reg.dim), ExtendedPoint::infinity(reg.dim)};
      }
      ExtendedPoint x = sample_ball_point(rng, reg.dim, 1.0);
      ExtendedPoint u = sample_ball_point(rng, reg.dim, 1.0);
      // Invert the second draw through the unit sphere to land outside.
      const double nn = norm_sq(u);
      if (nn < 1e-300) return {std::move(x), ExtendedPoint::infinity(reg.dim)};
      std::vector<double> y(u.coords());
      for (double& c : y) c /= nn;
      for (double c : y) {
        if (std::fabs(c) > kMagnitudeCap) return {std::move(x), ExtendedPoint::infinity(reg.dim)};
      }
      return {std::move(x), ExtendedPoint(std::move(y))};
    }
    case RegionKind::sphere: {
      if (index == 0) {
        return {ExtendedPoint::zero(reg.dim), ExtendedPoint::infinity(reg.dim)};
      }
      ExtendedPoint x = sample_sphere_point(rng, reg.dim, p_inf);
      ExtendedPoint y = sample_sphere_point(rng, reg.dim, p_inf);
      return {std::move(x), std::move(y)};
    }
    case RegionKind::real_line: {
      if (index == 0) {
        return {ExtendedPoint::zero(1), ExtendedPoint::infinity(1)};
      }
      ExtendedPoint x = sample_line_point(rng, p_inf);
      ExtendedPoint y = sample_line_point(rng, p_inf);
      return {std::move(x), std::move(y)};
    }
    case RegionKind::positive_axis: {
      auto draw = [&]() {
        const double t = std::tan(0.5 * std::numbers::pi * rng.u01());
        return std::fabs(t) > kMagnitudeCap ? ExtendedPoint::infinity(1) : ExtendedPoint({t});
      };
      ExtendedPoint x = draw();
      ExtendedPoint y = draw();
      return {std::move(x), std::move(y)};
    }
  }
  std::abort();
}

// Membership test used by the pattern-search refinement.
inline bool region_contains(const Region& reg, const ExtendedPoint& x) {
  switch (reg.kind) {
    case RegionKind::unit_ball:
      return !x.is_infinity() && norm(x) < 1.0;
    case RegionKind::ball:
      return !x.is_infinity() && norm(x) < reg.radius;
    case RegionKind::split_pair:
    case RegionKind::sphere:
      return true;
    case RegionKind::real_line:
      return x.dim() == 1;
    case RegionKind::positive_axis:
      return x.dim() == 1 && (x.is_infinity() || x[0] >= 0.0);
  }
  std::abort();
}

}  // namespace qcdist
