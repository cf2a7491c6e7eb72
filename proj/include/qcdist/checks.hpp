#pragma once

// Numerical verification of every inequality and identity the bound
// formulas rest on.  Each check draws a deterministic sample (or walks a
// deterministic grid), records the worst margin seen together with the
// witness configuration that attained it, and can re-evaluate a stored
// witness independently of the scan.  Margins are oriented so that
// "0 or larger" means the claim held; a check passes when the worst margin
// stays above -tolerance.

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "extended_point.hpp"
#include "geometry.hpp"
#include "holder.hpp"
#include "maps.hpp"
#include "sampling.hpp"

namespace qcdist {

struct CheckReport {
  std::string name;
  std::string claim;
  bool pass = false;
  double worst_margin = 0.0;
  double tolerance = 0.0;
  long samples_used = 0;
  nlohmann::json witness;
};

struct CheckDef {
  const char* name;
  const char* claim;
  double tolerance;
  CheckReport (*run)(const SampleConfig&);
  double (*reeval)(const nlohmann::json& witness);
};

inline nlohmann::json point_json(const ExtendedPoint& x) {
  if (x.is_infinity()) return nlohmann::json{{"dim", x.dim()}, {"inf", true}};
  return nlohmann::json(x.coords());
}

inline ExtendedPoint point_from_json(const nlohmann::json& j) {
  if (j.is_object()) return ExtendedPoint::infinity(j.at("dim").get<int>());
  return ExtendedPoint(j.get<std::vector<double>>());
}

namespace checks {

// Bookkeeping shared by all checks: fold a candidate margin into the
// running worst, remembering the witness that produced it.
struct WorstTracker {
  double margin = std::numeric_limits<double>::infinity();
  nlohmann::json witness;
  long samples = 0;

  void fold(double m, nlohmann::json w) {
    ++samples;
    if (m < margin) {
      margin = m;
      witness = std::move(w);
    }
  }
};

inline CheckReport finish(const CheckDef& def, const WorstTracker& t, bool extra_ok = true) {
  CheckReport r;
  r.name = def.name;
  r.claim = def.claim;
  r.tolerance = def.tolerance;
  r.worst_margin = t.margin;
  r.samples_used = t.samples;
  r.witness = t.witness;
  r.pass = extra_ok && (t.margin >= -def.tolerance);
  return r;
}

// ---------------------------------------------------------------- metric-axioms

inline double metric_axioms_margin(const ExtendedPoint& x, const ExtendedPoint& y,
                                   const ExtendedPoint& z) {
  const double qxy = spherical_distance(x, y);
  const double qyx = spherical_distance(y, x);
  const double qxz = spherical_distance(x, z);
  const double qzy = spherical_distance(z, y);
  const double qyz = spherical_distance(y, z);
  double m = std::min({qxy, qxz, qyz});                          // nonnegative
  m = std::min(m, 1.0 - std::max({qxy, qxz, qyz}));              // at most 1
  m = std::min(m, -std::fabs(qxy - qyx));                        // symmetric
  m = std::min(m, -spherical_distance(x, x));                    // q(x,x) = 0
  m = std::min(m, qxz + qzy - qxy);                              // triangle, all
  m = std::min(m, qxy + qyz - qxz);                              // three ways
  m = std::min(m, qyx + qxz - qyz);
  return m;
}

inline double metric_axioms_reeval(const nlohmann::json& w) {
  return metric_axioms_margin(point_from_json(w.at("x")), point_from_json(w.at("y")),
                              point_from_json(w.at("z")));
}

inline CheckReport metric_axioms_run(const CheckDef& def, const SampleConfig& cfg) {
  WorstTracker t;
  const double p_inf = 1.0 / static_cast<double>(cfg.count);
  for (int n : {2, 3, 5}) {
    for (long i = 0; i < cfg.count; ++i) {
      IndexedRng rng(cfg.seed, 0x100u + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i));
      const ExtendedPoint x = sample_sphere_point(rng, n, p_inf);
      const ExtendedPoint y = sample_sphere_point(rng, n, p_inf);
      const ExtendedPoint z = sample_sphere_point(rng, n, p_inf);
      t.fold(metric_axioms_margin(x, y, z),
             {{"x", point_json(x)}, {"y", point_json(y)}, {"z", point_json(z)}});
    }
  }
  return finish(def, t);
}

// ---------------------------------------------------------------- lift-isometry

inline double lift_isometry_margin(const ExtendedPoint& x, const ExtendedPoint& y) {
  const std::vector<double> lx = stereo_lift(x);
  const std::vector<double> ly = stereo_lift(y);
  double d2 = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double d = lx[i] - ly[i];
    d2 += d * d;
  }
  double m = -std::fabs(std::sqrt(d2) - spherical_distance(x, y));
  // The lift lands on the sphere of radius 1/2 about (0,…,0,1/2).
  double c2 = 0.0;
  for (std::size_t i = 0; i + 1 < lx.size(); ++i) c2 += lx[i] * lx[i];
  const double h = lx.back() - 0.5;
  m = std::min(m, -std::fabs(std::sqrt(c2 + h * h) - 0.5));
  return m;
}

inline double lift_isometry_reeval(const nlohmann::json& w) {
  return lift_isometry_margin(point_from_json(w.at("x")), point_from_json(w.at("y")));
}

inline CheckReport lift_isometry_run(const CheckDef& def, const SampleConfig& cfg) {
  WorstTracker t;
  const double p_inf = 1.0 / static_cast<double>(cfg.count);
  for (int n : {2, 3, 5}) {
    for (long i = 0; i < cfg.count; ++i) {
      IndexedRng rng(cfg.seed, 0x200u + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i));
      const ExtendedPoint x = sample_sphere_point(rng, n, p_inf);
      const ExtendedPoint y = sample_sphere_point(rng, n, p_inf);
      t.fold(lift_isometry_margin(x, y), {{"x", point_json(x)}, {"y", point_json(y)}});
    }
  }
  return finish(def, t);
}

// ---------------------------------------------------------------- ineq-1.5c

// Margin of (1+t^gamma)^gamma <= (1+0.13(1-gamma))(1+t), in ratio form.
inline double ineq_15c_margin(double gamma, double t) {
  return (1.0 + 0.13 * (1.0 - gamma)) - std::pow(1.0 + std::pow(t, gamma), gamma) / (1.0 + t);
}

inline double ineq_15c_reeval(const nlohmann::json& w) {
  return ineq_15c_margin(w.at("gamma").get<double>(), w.at("t").get<double>());
}

inline CheckReport ineq_15c_run(const CheckDef& def, const SampleConfig& cfg) {
  WorstTracker t;
  const long tcount = std::max<long>(100, cfg.count / 100);
  double eq_dev = 0.0;  // |margin| along gamma = 1, where equality is exact
  for (int j = 1; j <= 100; ++j) {
    const double gamma = j / 100.0;
    for (long i = 0; i < tcount; ++i) {
      const double lt = -8.0 + 16.0 * static_cast<double>(i) / static_cast<double>(tcount - 1);
      const double tt = std::pow(10.0, lt);
      const double m = ineq_15c_margin(gamma, tt);
      t.fold(m, {{"gamma", gamma}, {"t", tt}});
      if (j == 100) eq_dev = std::max(eq_dev, std::fabs(m));
    }
    t.fold(ineq_15c_margin(gamma, 0.0), {{"gamma", gamma}, {"t", 0.0}});
  }
  // Pattern-search toward a violation from the worst grid point.
  double g = t.witness.at("gamma").get<double>();
  double lt = std::log10(std::max(1e-300, t.witness.at("t").get<double>()));
  double h = 0.05;
  for (int it = 0; it < std::max(cfg.refinement_steps, 40); ++it) {
    bool improved = false;
    const std::array<std::array<double, 2>, 4> moves = {{{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}}};
    for (const auto& mv : moves) {
      const double g2 = std::clamp(g + mv[0], 1e-3, 1.0);
      const double lt2 = std::clamp(lt + 40.0 * mv[1], -12.0, 12.0);
      const double m = ineq_15c_margin(g2, std::pow(10.0, lt2));
      if (m < t.margin) {
        t.fold(m, {{"gamma", g2}, {"t", std::pow(10.0, lt2)}});
        g = g2;
        lt = lt2;
        improved = true;
      }
    }
    if (!improved) h *= 0.5;
    if (h < 1e-12) break;
  }
  return finish(def, t, eq_dev <= 1e-12);
}

// ---------------------------------------------------------------- infimum-claim

// h(s) = log(1+s) + s log(s)/(1+s), the derivative comparison behind the
// 0.13 constant: its infimum over s > 0 must clear -0.1144, while the
// competing side peaks at -0.13/1.13 < -0.115.
inline double infimum_h(double s) { return std::log1p(s) + s * std::log(s) / (1.0 + s); }

inline double infimum_margins(double s_star) {
  const double m1 = infimum_h(s_star) - (-0.1144);
  const double m2 = -0.115 - (-0.13 / 1.13);
  return std::min(m1, m2);
}

inline double infimum_reeval(const nlohmann::json& w) {
  return infimum_margins(w.at("s_star").get<double>());
}

inline CheckReport infimum_run(const CheckDef& def, const SampleConfig& cfg) {
  // Coarse log-grid bracket, then golden-section to ~1e-13 relative width.
  const long grid = std::max<long>(1000, cfg.count / 10);
  double best_s = 1.0, best_h = infimum_h(1.0);
  for (long i = 0; i <= grid; ++i) {
    const double s = std::pow(10.0, -6.0 + 8.0 * static_cast<double>(i) / static_cast<double>(grid));
    const double h = infimum_h(s);
    if (h < best_h) {
      best_h = h;
      best_s = s;
    }
  }
  double a = best_s / 2.0, b = best_s * 2.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = infimum_h(c), fd = infimum_h(d);
  while (b - a > 1e-14 * best_s) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = infimum_h(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = infimum_h(d);
    }
  }
  const double s_star = 0.5 * (a + b);
  const double h_min = infimum_h(s_star);
  WorstTracker t;
  t.fold(infimum_margins(s_star), {{"s_star", s_star}, {"h_min", h_min}});
  t.samples = grid;
  return finish(def, t);
}

// ---------------------------------------------------------------- R-chain

// The chain bounding the R-dependent factor of the crude estimate, on
// beta in (1, 2]:  R^{beta-alpha} <= R^{2(beta-1)} <= (2/(1-32^{1-beta}))^{beta-1}
// <= exp(0.73 sqrt(beta-1)).  Margins are differences of logs.
inline std::array<double, 3> r_chain_margins(double beta) {
  const double alpha = 1.0 / beta;
  const double u = std::exp((1.0 - beta) * std::log(32.0));
  const double logR = 0.5 * std::log((1.0 + u) / (1.0 - u));
  const double l0 = (beta - alpha) * logR;
  const double l1 = 2.0 * (beta - 1.0) * logR;
  const double l2 = (beta - 1.0) * std::log(2.0 / (1.0 - u));
  const double l3 = 0.73 * std::sqrt(beta - 1.0);
  return {l1 - l0, l2 - l1, l3 - l2};
}

inline double r_chain_reeval(const nlohmann::json& w) {
  return r_chain_margins(w.at("beta").get<double>())[w.at("link").get<std::size_t>()];
}

inline CheckReport r_chain_run(const CheckDef& def, const SampleConfig& cfg) {
  WorstTracker t;
  const long pts = std::max<long>(100, cfg.count / 10);
  for (long i = 1; i <= pts; ++i) {
    const double beta = 1.0 + static_cast<double>(i) / static_cast<double>(pts);
    const auto ms = r_chain_margins(beta);
    for (std::size_t link = 0; link < ms.size(); ++link) {
      t.fold(ms[link], {{"beta", beta}, {"link", link}});
    }
  }
  return finish(def, t);
}

// ---------------------------------------------------------------- R-identity

inline double r_identity_margin(double beta) {
  const double u = std::exp((1.0 - beta) * std::log(32.0));
  const double R = std::sqrt((1.0 + u) / (1.0 - u));
  return -std::fabs((R * R - 1.0) / (R * R + 1.0) - u);
}

inline double r_identity_reeval(const nlohmann::json& w) {
  return r_identity_margin(w.at("beta").get<double>());
}

inline CheckReport r_identity_run(const CheckDef& def, const SampleConfig& cfg) {
  WorstTracker t;
  const long pts = std::max<long>(100, cfg.count / 10);
  for (long i = 1; i <= pts; ++i) {
    const double beta = 1.0 + static_cast<double>(i) / static_cast<double>(pts);
    t.fold(r_identity_margin(beta), {{"beta", beta}});
  }
  return finish(def, t);
}

// ---------------------------------------------------------------- waypoint-sqrt2

inline double waypoint_margin(const ExtendedPoint& x, const ExtendedPoint& y) {
  const ExtendedPoint w = chord_waypoint(x, y);
  const double legs = spherical_distance(x, w) + spherical_distance(w, y);
  const double bound = std::numbers::sqrt2 * spherical_distance(x, y) * (1.0 + 1e-12);
  double m = bound - legs;
  m = std::min(m, -std::fabs(norm(w) - 1.0));
  return m;
}

inline double waypoint_reeval(const nlohmann::json& w) {
  return waypoint_margin(point_from_json(w.at("x")), point_from_json(w.at("y")));
}

inline CheckReport waypoint_run(const CheckDef& def, const SampleConfig& cfg) {
  WorstTracker t;
  for (int n : {2, 3}) {
    SampleConfig pair_cfg = cfg;
    pair_cfg.region = {RegionKind::split_pair, n, 1.0};
    for (long i = 0; i < cfg.count; ++i) {
      SampleConfig salted = pair_cfg;
      salted.seed = cfg.seed ^ (0x700u + static_cast<std::uint64_t>(n));
      auto [x, y] = sample_region_pair(salted, i);
      t.fold(waypoint_margin(x, y), {{"x", point_json(x)}, {"y", point_json(y)}});
    }
  }
  // Equality is approached by the pair (0, ∞); require the ratio there to
  // reach sqrt(2) - 1e-3.
  const ExtendedPoint x0 = ExtendedPoint::zero(2);
  const ExtendedPoint yinf = ExtendedPoint::infinity(2);
  const ExtendedPoint w0 = chord_waypoint(x0, yinf);
  const double ratio = (spherical_distance(x0, w0) + spherical_distance(w0, yinf)) /
                       spherical_distance(x0, yinf);
  const bool attained = ratio >= std::numbers::sqrt2 - 1e-3;
  // The scalar reduction the sqrt(2) constant rests on:
  //   sqrt(2 - 2 cos(th/2)) <= sqrt(1 - cos(th)) for th in [0, pi].
  bool trig_ok = true;
  for (int i = 0; i <= 4096; ++i) {
    const double th = std::numbers::pi * static_cast<double>(i) / 4096.0;
    if (std::sqrt(1.0 - std::cos(th)) - std::sqrt(2.0 - 2.0 * std::cos(0.5 * th)) < -1e-12) {
      trig_ok = false;
    }
  }
  return finish(def, t, attained && trig_ok);
}

// ---------------------------------------------------------------- aux-geometry

// Region { x in R^2 : x_2 < -1/R, |x| <= R } inverted through S^1(e_2, sqrt2):
// the image must stay inside the ball of radius aux_radius(R), with the
// corner of the region mapping exactly onto that radius; the 2x2 linear
// system behind the closed form must reproduce it.
inline SphereSpec aux_sphere() { return SphereSpec({0.0, 1.0}, std::numbers::sqrt2); }

inline double aux_point_margin(double R, const ExtendedPoint& x) {
  const double r = norm(invert(x, aux_sphere()));
  return aux_radius(R) * (1.0 + 1e-12) - r;
}

inline double aux_reeval(const nlohmann::json& w) {
  return aux_point_margin(w.at("R").get<double>(), point_from_json(w.at("x")));
}

inline CheckReport aux_geometry_run(const CheckDef& def, const SampleConfig& cfg) {
  WorstTracker t;
  bool extras = true;
  const long per_part = std::max<long>(100, cfg.count / 2);
  for (double R : {1.1, 2.0, 5.0}) {
    const double corner_x = std::sqrt(R * R - 1.0 / (R * R));
    double sup = 0.0;
    auto consider = [&](const ExtendedPoint& x) {
      sup = std::max(sup, norm(invert(x, aux_sphere())));
      t.fold(aux_point_margin(R, x), {{"R", R}, {"x", point_json(x)}});
    };
    // Bottom edge of the region on the line x_2 = -1/R (corners included).
    for (long i = 0; i <= per_part; ++i) {
      const double s = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(per_part);
      consider(ExtendedPoint({s * corner_x, -1.0 / R}));
    }
    // Circular arc |x| = R below the line.
    const double delta = std::asin(1.0 / (R * R));
    for (long i = 0; i <= per_part; ++i) {
      const double th = std::numbers::pi + delta +
                        (std::numbers::pi - 2.0 * delta) * static_cast<double>(i) /
                            static_cast<double>(per_part);
      consider(ExtendedPoint({R * std::cos(th), R * std::sin(th)}));
    }
    // Interior points.
    for (long i = 0; i < per_part / 2; ++i) {
      IndexedRng rng(cfg.seed, 0x800u + static_cast<std::uint64_t>(R * 16.0),
                     static_cast<std::uint64_t>(i));
      const double x1 = (2.0 * rng.u01() - 1.0) * R;
      const double x2 = -1.0 / R - rng.u01() * (R - 1.0 / R);
      if (x1 * x1 + x2 * x2 <= R * R) consider(ExtendedPoint({x1, x2}));
    }
    // The bound must be attained (the corner realises it).
    if (sup < aux_radius(R) - 1e-3) extras = false;
    // Corner maps exactly onto the critical radius.
    const double corner_r = norm(invert(ExtendedPoint({corner_x, -1.0 / R}), aux_sphere()));
    if (std::fabs(corner_r - aux_radius(R)) > 1e-12) extras = false;
    // Linear system for (u, v) = (|y|^2, 2 y_2) from the two image circles:
    //   u - v/(R+1)                 = (R-1)/(R+1)
    //   u - v (R^2+1)/(R^2-1)       = -1
    // (second radius is 2R/(R^2-1), the image of the circle |x| = R).
    const double a12 = -1.0 / (R + 1.0), b1 = (R - 1.0) / (R + 1.0);
    const double a22 = -(R * R + 1.0) / (R * R - 1.0), b2 = -1.0;
    const double det = a22 - a12;  // coefficient of u is 1 in both rows
    const double v = (b2 - b1) / det;
    const double u = b1 - a12 * v;
    if (std::fabs(u - (R * R * R + R - 2.0) / (R * R * R + R + 2.0)) > 1e-12) extras = false;
    if (std::fabs(v - 2.0 * R * (R - 1.0) / (R * R - R + 2.0)) > 1e-12) extras = false;
  }
  return finish(def, t, extras);
}

// ---------------------------------------------------------------- q-isometry-inversion

inline double q_isometry_margin(const ExtendedPoint& x, const ExtendedPoint& y) {
  return -std::fabs(spherical_distance(unit_inversion(x), unit_inversion(y)) -
                    spherical_distance(x, y));
}

inline double q_isometry_reeval(const nlohmann::json& w) {
  return q_isometry_margin(point_from_json(w.at("x")), point_from_json(w.at("y")));
}

inline CheckReport q_isometry_run(const CheckDef& def, const SampleConfig& cfg) {
  WorstTracker t;
  const double p_inf = 1.0 / static_cast<double>(cfg.count);
  for (int n : {2, 3}) {
    for (long i = 0; i < cfg.count; ++i) {
      IndexedRng rng(cfg.seed, 0x900u + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i));
      const ExtendedPoint x = sample_sphere_point(rng, n, p_inf);
      const ExtendedPoint y = sample_sphere_point(rng, n, p_inf);
      t.fold(q_isometry_margin(x, y), {{"x", point_json(x)}, {"y", point_json(y)}});
    }
    // Pinned configurations: the origin, ∞ and points on the fixed sphere.
    t.fold(q_isometry_margin(ExtendedPoint::zero(n), ExtendedPoint::infinity(n)),
           {{"x", point_json(ExtendedPoint::zero(n))}, {"y", point_json(ExtendedPoint::infinity(n))}});
    t.fold(q_isometry_margin(ExtendedPoint::unit(n, 0), ExtendedPoint::zero(n)),
           {{"x", point_json(ExtendedPoint::unit(n, 0))}, {"y", point_json(ExtendedPoint::zero(n))}});
  }
  return finish(def, t);
}

// ---------------------------------------------------------------- bound-dominance

// Every ordering claim between the closed-form constants, in log space:
// which = 0: m4_sharp <= exp(7 sqrt(K-1))      on (1, 1.01]
//         1: m4_sharp <= exp(106 sqrt(K-1))    on (1, 2]
//         2: m4_sharp <= exp(138 sqrt(K-1))    on (1, 2]
//         3: m4_sharp <= m4_crude structured   on (1, 2]
//         4: m3_ball  <= m3_global             on (1, 2]
//         5: m4_sharp <= bonfert               on (1, 1.01], n = 2
inline double dominance_margin(double K, int n, int which) {
  const DistortionParams p(K, n);
  const LambdaBounds lam = lambda_bounds(n);
  const double l4 = m4_sharp(p, lam).log_value;
  switch (which) {
    case 0:
      return 7.0 * std::sqrt(K - 1.0) - l4;
    case 1:
      return 106.0 * std::sqrt(K - 1.0) - l4;
    case 2:
      return 138.0 * std::sqrt(K - 1.0) - l4;
    case 3:
      return m4_crude(p, lam).structured.log_value - l4;
    case 4:
      return m3_global(p, lam).log_value - m3_ball(p, lam).log_value;
    case 5:
      return std::log(bonfert_bound(K)) - l4;
  }
  throw std::invalid_argument("dominance_margin: unknown claim id");
}

inline double dominance_reeval(const nlohmann::json& w) {
  return dominance_margin(w.at("K").get<double>(), w.at("n").get<int>(), w.at("which").get<int>());
}

inline CheckReport bound_dominance_run(const CheckDef& def, const SampleConfig& cfg) {
  WorstTracker t;
  const long pts = std::max<long>(50, cfg.count / 200);
  auto fold = [&](double K, int n, int which) {
    t.fold(dominance_margin(K, n, which), {{"K", K}, {"n", n}, {"which", which}});
  };
  for (long i = 1; i <= pts; ++i) {
    // (1, 1.01]: log-spaced in K-1 down to 1e-8.
    const double Ksmall =
        1.0 + std::pow(10.0, -8.0 + 6.0 * static_cast<double>(i) / static_cast<double>(pts));
    // (1, 2]: linear.
    const double Kbig = 1.0 + static_cast<double>(i) / static_cast<double>(pts);
    for (int n : {2, 3, 5, 8}) {
      fold(Ksmall, n, 0);
      fold(Kbig, n, 1);
      fold(Kbig, n, 2);
      fold(Kbig, n, 3);
      fold(Ksmall, n, 3);
      fold(Kbig, n, 4);
      fold(Ksmall, n, 4);
    }
    fold(Ksmall, 2, 5);
  }
  return finish(def, t);
}

// ---------------------------------------------------------------- qs-ratio

inline double qs_ratio_margin(double lambda, double x, double tt) {
  const QCTestMap g = QCTestMap::piecewise_linear_qs(lambda);
  const double K = lv_qs_constant(lambda);
  auto ev = [&](double s) { return evaluate(g, ExtendedPoint({s}))[0]; };
  const double upper = ev(x + tt) - ev(x);
  const double lower = ev(x) - ev(x - tt);
  const double rho = upper / lower;
  return std::min(K - rho, rho - 1.0 / K);
}

inline double qs_ratio_reeval(const nlohmann::json& w) {
  return qs_ratio_margin(w.at("lambda").get<double>(), w.at("x").get<double>(),
                         w.at("t").get<double>());
}

inline CheckReport qs_ratio_run(const CheckDef& def, const SampleConfig& cfg) {
  WorstTracker t;
  bool extras = true;
  for (double lambda : {0.5, 1.5, 3.0}) {
    for (long i = 0; i < cfg.count; ++i) {
      IndexedRng rng(cfg.seed, 0xA00u + static_cast<std::uint64_t>(lambda * 4.0),
                     static_cast<std::uint64_t>(i));
      const double x = 2.0 * std::tan(std::numbers::pi * (rng.u01() - 0.5));
      const double tt = std::fabs(std::tan(std::numbers::pi * (rng.u01() - 0.5))) + 1e-9;
      if (!std::isfinite(x) || !std::isfinite(tt)) continue;
      t.fold(qs_ratio_margin(lambda, x, tt), {{"lambda", lambda}, {"x", x}, {"t", tt}});
    }
    // The constant is attained at x = 0, t = 1 with ratio exactly 1/lambda.
    const double rho = (1.0 - 0.0) / (0.0 - evaluate(QCTestMap::piecewise_linear_qs(lambda),
                                                     ExtendedPoint({-1.0}))[0]);
    if (std::fabs(rho - 1.0 / lambda) > 1e-12) extras = false;
    if (std::fabs(std::max(rho, 1.0 / rho) - lv_qs_constant(lambda)) > 1e-9) extras = false;
    t.fold(qs_ratio_margin(lambda, 0.0, 1.0), {{"lambda", lambda}, {"x", 0.0}, {"t", 1.0}});
  }
  return finish(def, t, extras);
}

// ---------------------------------------------------------------- qs-spherical

inline double qs_spherical_pair_margin(double lambda, const ExtendedPoint& x,
                                       const ExtendedPoint& y) {
  const QCTestMap g = QCTestMap::piecewise_linear_qs(lambda);
  const QsBound qb = qs_spherical_bound(lv_qs_constant(lambda));
  const double d = spherical_distance(x, y);
  if (d < 1e-9) return std::numeric_limits<double>::infinity();
  const double quot = spherical_distance(evaluate(g, x), evaluate(g, y)) / std::pow(d, qb.exponent);
  return qb.c.log_value - std::log(quot);
}

inline double qs_spherical_reeval(const nlohmann::json& w) {
  return qs_spherical_pair_margin(w.at("lambda").get<double>(), point_from_json(w.at("x")),
                                  point_from_json(w.at("y")));
}

inline CheckReport qs_spherical_run(const CheckDef& def, const SampleConfig& cfg) {
  WorstTracker t;
  bool extras = true;
  for (double lambda : {1.5, 3.0}) {
    const QCTestMap g = QCTestMap::piecewise_linear_qs(lambda);
    const QsBound qb = qs_spherical_bound(lv_qs_constant(lambda));
    SampleConfig hcfg = cfg;
    hcfg.region = {RegionKind::real_line, 1, 1.0};
    hcfg.refinement_steps = std::max(cfg.refinement_steps, 20);
    const HolderReport rep = empirical_holder(g, Metric::spherical, qb.exponent, hcfg);
    // The scan's sup must both respect the bound and reach at least 1
    // (the pair (0, ∞) is fixed by the map).
    if (!(rep.empirical_constant >= 1.0 - 1e-12)) extras = false;
    t.fold(qb.c.log_value - std::log(rep.empirical_constant),
           {{"lambda", lambda}, {"x", point_json(rep.witness_x)}, {"y", point_json(rep.witness_y)}});
  }
  return finish(def, t, extras);
}

}  // namespace checks

inline const std::vector<CheckDef>& check_registry();

namespace checks {

// run() entries bind the CheckDef by name lookup so that tolerances and
// claims live in exactly one table.
inline const CheckDef& def_by_name(const char* name) {
  for (const CheckDef& d : check_registry()) {
    if (std::string(d.name) == name) return d;
  }
  throw std::logic_error(std::string("check table is missing ") + name);
}

}  // namespace checks

inline const std::vector<CheckDef>& check_registry() {
  static const std::vector<CheckDef> defs = {
      {"metric-axioms",
       "the chordal distance is a [0,1]-valued metric (symmetry, identity, triangle)",
       1e-12,
       [](const SampleConfig& c) { return checks::metric_axioms_run(checks::def_by_name("metric-axioms"), c); },
       checks::metric_axioms_reeval},
      {"lift-isometry",
       "the stereographic lift is an isometry onto the sphere of diameter 1",
       1e-12,
       [](const SampleConfig& c) { return checks::lift_isometry_run(checks::def_by_name("lift-isometry"), c); },
       checks::lift_isometry_reeval},
      {"ineq-1.5c",
       "(1+t^g)^g <= (1+0.13(1-g))(1+t) for g in (0,1], t >= 0, equality at g = 1",
       1e-9,
       [](const SampleConfig& c) { return checks::ineq_15c_run(checks::def_by_name("ineq-1.5c"), c); },
       checks::ineq_15c_reeval},
      {"infimum-claim",
       "inf_s log(1+s) + s log(s)/(1+s) clears -0.1144, against the -0.13/1.13 < -0.115 side",
       0.0,
       [](const SampleConfig& c) { return checks::infimum_run(checks::def_by_name("infimum-claim"), c); },
       checks::infimum_reeval},
      {"R-chain",
       "R^(b-a) <= R^(2(b-1)) <= (2/(1-32^(1-b)))^(b-1) <= exp(0.73 sqrt(b-1)) on b in (1,2]",
       1e-9,
       [](const SampleConfig& c) { return checks::r_chain_run(checks::def_by_name("R-chain"), c); },
       checks::r_chain_reeval},
      {"R-identity",
       "(R^2-1)/(R^2+1) recovers 32^(1-b) when R = sqrt((1+32^(1-b))/(1-32^(1-b)))",
       1e-12,
       [](const SampleConfig& c) { return checks::r_identity_run(checks::def_by_name("R-identity"), c); },
       checks::r_identity_reeval},
      {"waypoint-sqrt2",
       "splitting a pair at the chord crossing costs at most sqrt(2): q(x,w)+q(w,y) <= sqrt2 q(x,y)",
       1e-12,
       [](const SampleConfig& c) { return checks::waypoint_run(checks::def_by_name("waypoint-sqrt2"), c); },
       checks::waypoint_reeval},
      {"aux-geometry",
       "the region below x_2 = -1/R inside |x| <= R inverts into the ball of radius aux_radius(R)",
       1e-9,
       [](const SampleConfig& c) { return checks::aux_geometry_run(checks::def_by_name("aux-geometry"), c); },
       checks::aux_reeval},
      {"q-isometry-inversion",
       "inversion in the unit sphere preserves the chordal distance",
       1e-12,
       [](const SampleConfig& c) { return checks::q_isometry_run(checks::def_by_name("q-isometry-inversion"), c); },
       checks::q_isometry_reeval},
      {"bound-dominance",
       "each closed-form cap dominates m4_sharp on its stated K-range; m3_ball <= m3_global",
       1e-9,
       [](const SampleConfig& c) { return checks::bound_dominance_run(checks::def_by_name("bound-dominance"), c); },
       checks::dominance_reeval},
      {"qs-ratio",
       "the piecewise-linear line map has quasisymmetry ratio inside [1/K, K], attained",
       1e-12,
       [](const SampleConfig& c) { return checks::qs_ratio_run(checks::def_by_name("qs-ratio"), c); },
       checks::qs_ratio_reeval},
      {"qs-spherical",
       "the chordal Hölder bound C(K) q^(1/L) dominates empirical quotients of the line maps",
       1e-9,
       [](const SampleConfig& c) { return checks::qs_spherical_run(checks::def_by_name("qs-spherical"), c); },
       checks::qs_spherical_reeval},
  };
  return defs;
}

inline const CheckDef* find_check(const std::string& name) {
  for (const CheckDef& d : check_registry()) {
    if (name == d.name) return &d;
  }
  return nullptr;
}

inline CheckReport run_check(const std::string& name, const SampleConfig& cfg) {
  const CheckDef* d = find_check(name);
  if (!d) throw std::invalid_argument("run_check: unknown check '" + name + "'");
  return d->run(cfg);
}

inline std::vector<CheckReport> run_all_checks(const SampleConfig& cfg) {
  std::vector<CheckReport> out;
  for (const CheckDef& d : check_registry()) out.push_back(d.run(cfg));
  return out;
}

// ---------------------------------------------------------------- sharpness trend

struct TrendRow {
  double K;
  double m4;         // m4_sharp(K, n)
  double cap7;       // exp(7 sqrt(K-1)) where stated (K <= 1.01), else NaN
  double empirical;  // worst spherical quotient of the matching radial stretch
};

struct SharpnessTrend {
  std::vector<TrendRow> rows;
  bool monotone = false;     // m4 nonincreasing along the list
  bool final_small = false;  // last m4 <= 1.007 once K-1 <= 1e-6
};

// Walks K values decreasing toward 1 and tabulates how the sharp global
// bound degenerates to 1, alongside the empirical quotient of the radial
// stretch with the same distortion.
inline SharpnessTrend sharpness_trend(int n, const std::vector<double>& Ks,
                                      const SampleConfig& cfg) {
  if (Ks.empty()) throw std::invalid_argument("sharpness_trend: empty K list");
  for (std::size_t i = 0; i < Ks.size(); ++i) {
    if (!(Ks[i] > 1.0)) throw std::invalid_argument("sharpness_trend: K values must exceed 1");
    if (i > 0 && !(Ks[i] < Ks[i - 1])) {
      throw std::invalid_argument("sharpness_trend: K values must strictly decrease toward 1");
    }
  }
  const LambdaBounds lam = lambda_bounds(n);
  SharpnessTrend out;
  for (double K : Ks) {
    const DistortionParams p(K, n);
    TrendRow row;
    row.K = K;
    row.m4 = m4_sharp(p, lam).value;
    row.cap7 = K <= 1.01 ? std::exp(7.0 * std::sqrt(K - 1.0))
                         : std::numeric_limits<double>::quiet_NaN();
    SampleConfig hcfg = cfg;
    hcfg.region = {RegionKind::sphere, n, 1.0};
    const QCTestMap f = QCTestMap::radial_stretch(p.alpha, n);
    row.empirical = empirical_holder(f, Metric::spherical, p.alpha, hcfg).empirical_constant;
    out.rows.push_back(row);
  }
  out.monotone = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    if (out.rows[i].m4 > out.rows[i - 1].m4) out.monotone = false;
  }
  out.final_small = Ks.back() > 1.0 + 1e-6 || out.rows.back().m4 <= 1.007;
  return out;
}

}  // namespace qcdist
