#pragma once

// Empirical worst-case Hölder quotients for the test maps: a deterministic
// random scan over pairs of a region followed by a coordinatewise
// pattern-search refinement, plus automatic selection of the proved bound
// that applies to the configuration (map normalisation, metric, exponent,
// region), so sharpness can be reported as bound / empirical.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "extended_point.hpp"
#include "geometry.hpp"
#include "maps.hpp"
#include "sampling.hpp"

namespace qcdist {

enum class Metric { euclidean, spherical };

inline const char* metric_name(Metric m) {
  return m == Metric::euclidean ? "euclidean" : "spherical";
}

struct HolderReport {
  std::string map;
  Metric metric = Metric::spherical;
  double exponent = 1.0;
  double empirical_constant = 0.0;  // sup of d(f x, f y) / d(x, y)^exponent over the scan
  ExtendedPoint witness_x = ExtendedPoint::zero(2);
  ExtendedPoint witness_y = ExtendedPoint::zero(2);
  double diag_c_sup = 0.0;          // sup (1+|x|^2)^exponent / (1+|f(x)|^2), a diagnostic
  bool has_bound = false;
  double bound_value = 0.0;
  double bound_log = 0.0;
  std::string bound_formula;
  double slack_log = 0.0;           // log(bound) - log(empirical), when both exist
  long samples_used = 0;
  long pairs_skipped = 0;
};

namespace detail {

// Minimum separation below which a quotient is treated as 0/0 noise.
inline constexpr double kPairCutoff = 1e-9;

inline double metric_distance(Metric m, const ExtendedPoint& x, const ExtendedPoint& y) {
  return m == Metric::euclidean ? euclidean_distance(x, y) : spherical_distance(x, y);
}

// Quotient of one pair, or nothing if the pair is degenerate for this
// metric (coincident points, or ∞ under the Euclidean metric).
inline std::optional<double> holder_quotient(const QCTestMap& f, Metric m, double exponent,
                                             const ExtendedPoint& x, const ExtendedPoint& y) {
  if (m == Metric::euclidean && (x.is_infinity() || y.is_infinity())) return std::nullopt;
  const double d = metric_distance(m, x, y);
  if (!(d >= kPairCutoff)) return std::nullopt;
  const ExtendedPoint fx = evaluate(f, x);
  const ExtendedPoint fy = evaluate(f, y);
  if (m == Metric::euclidean && (fx.is_infinity() || fy.is_infinity())) return std::nullopt;
  const double num = metric_distance(m, fx, fy);
  return num / std::pow(d, exponent);
}

// One pattern-search pass: try ± h along every coordinate of both points,
// keep the best improvement, halve h otherwise.
inline void refine_pair(const QCTestMap& f, Metric m, double exponent, const Region& reg,
                        ExtendedPoint& x, ExtendedPoint& y, double& best, int steps) {
  double h = 0.125;
  for (int it = 0; it < steps; ++it) {
    bool improved = false;
    ExtendedPoint bx = x, by = y;
    for (int which = 0; which < 2; ++which) {
      const ExtendedPoint& base = which == 0 ? x : y;
      if (base.is_infinity()) continue;
      for (std::size_t j = 0; j < base.coords().size(); ++j) {
        for (double sign : {-1.0, 1.0}) {
          std::vector<double> c(base.coords());
          c[j] += sign * h * (1.0 + std::fabs(c[j]));
          ExtendedPoint cand(std::move(c));
          if (!region_contains(reg, cand)) continue;
          const auto q = which == 0 ? holder_quotient(f, m, exponent, cand, y)
                                    : holder_quotient(f, m, exponent, x, cand);
          if (q && *q > best) {
            best = *q;
            (which == 0 ? bx : by) = std::move(cand);
            improved = true;
          }
        }
      }
    }
    if (improved) {
      x = bx;
      y = by;
    } else {
      h *= 0.5;
      if (h < 1e-14) break;
    }
  }
}

// The proved bound matching a (map, metric, exponent, region) combination,
// if any of the library's constants applies.
inline std::optional<BoundValue> applicable_bound(const QCTestMap& f, Metric m, double exponent,
                                                  const Region& reg) {
  constexpr double eps = 1e-12;
  if (m == Metric::spherical) {
    if (f.kind == QCTestMap::Kind::piecewise_linear_qs) {
      const QsBound qb = qs_spherical_bound(f.qc_constant());
      if (std::fabs(exponent - qb.exponent) <= eps) return qb.c;
      return std::nullopt;
    }
    if (f.qc_constant_is_tight() && f.fixes_origin() && f.fixes_e1() && f.fixes_infinity()) {
      const DistortionParams p(f.qc_constant(), f.dim());
      if (std::fabs(exponent - p.alpha) <= eps) {
        const LambdaBounds lam = lambda_bounds(f.dim());
        BoundValue best = m4_sharp(p, lam);
        if (f.maps_ball_to_ball()) {
          const BoundValue alt = m3_global(p, lam);
          if (alt.log_value < best.log_value) best = alt;
        }
        return best;
      }
    }
    return std::nullopt;
  }
  // Euclidean: the unit-ball constant for normalised maps of the ball.
  const bool ball_region =
      reg.kind == RegionKind::unit_ball || (reg.kind == RegionKind::ball && reg.radius <= 1.0);
  if (ball_region && f.qc_constant_is_tight() && f.fixes_origin() && f.maps_ball_to_ball()) {
    const DistortionParams p(f.qc_constant(), f.dim());
    if (std::fabs(exponent - p.alpha) <= eps) return m1_default(p, lambda_bounds(f.dim()));
  }
  return std::nullopt;
}

}  // namespace detail

inline HolderReport empirical_holder(const QCTestMap& f, Metric m, double exponent,
                                     const SampleConfig& cfg) {
  if (!(exponent > 0.0) || !(exponent <= 1.0)) {
    throw std::invalid_argument("empirical_holder: exponent must lie in (0, 1]");
  }
  if (cfg.count < 1) throw std::invalid_argument("empirical_holder: need at least one sample");
  if (cfg.region.dim != f.dim()) {
    throw std::invalid_argument("empirical_holder: region/map dimension mismatch");
  }

  HolderReport rep;
  rep.map = f.to_string();
  rep.metric = m;
  rep.exponent = exponent;
  rep.witness_x = ExtendedPoint::zero(f.dim());
  rep.witness_y = ExtendedPoint::zero(f.dim());

  double best = -1.0;
  ExtendedPoint bx = rep.witness_x, by = rep.witness_y;
  for (long i = 0; i < cfg.count; ++i) {
    auto [x, y] = sample_region_pair(cfg, i);
    const auto q = detail::holder_quotient(f, m, exponent, x, y);
    if (!q) {
      ++rep.pairs_skipped;
      continue;
    }
    ++rep.samples_used;
    if (*q > best) {
      best = *q;
      bx = x;
      by = y;
    }
    for (const ExtendedPoint* pt : {&x, &y}) {
      if (pt->is_infinity()) continue;
      const ExtendedPoint img = evaluate(f, *pt);
      if (img.is_infinity()) continue;
      const double c = std::pow(1.0 + norm_sq(*pt), exponent) / (1.0 + norm_sq(img));
      if (c > rep.diag_c_sup) rep.diag_c_sup = c;
    }
  }
  if (best < 0.0) {
    throw std::runtime_error("empirical_holder: every sampled pair was degenerate");
  }

  if (cfg.refinement_steps > 0) {
    detail::refine_pair(f, m, exponent, cfg.region, bx, by, best, cfg.refinement_steps);
  }

  rep.empirical_constant = best;
  rep.witness_x = bx;
  rep.witness_y = by;

  if (const auto b = detail::applicable_bound(f, m, exponent, cfg.region)) {
    rep.has_bound = true;
    rep.bound_value = b->value;
    rep.bound_log = b->log_value;
    rep.bound_formula = b->formula;
    rep.slack_log = b->log_value - std::log(best);
  }
  return rep;
}

}  // namespace qcdist
