#pragma once

// Explicit constants for Hölder continuity of K-quasiconformal maps in the
// chordal metric.  Every bound is computed in log space and carried as a
// BoundValue, so products of huge factors (the distortion bound near K = 2
// is already ~e^24) never overflow and comparisons between bounds can be
// made on logs.  Conventions:
//   beta  = K^{1/(n-1)},  alpha = 1/beta  (so alpha*beta == 1 exactly),
//   lambda is the Grötzsch-ring constant, pinned to [4, lambda_hi(n)].

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace qcdist {

struct DistortionParams {
  double K;
  int n;
  double alpha;  // 1/beta, the Hölder exponent
  double beta;   // K^{1/(n-1)}

  DistortionParams(double K_, int n_) : K(K_), n(n_) {
    if (!std::isfinite(K) || !(K >= 1.0)) {
      throw std::invalid_argument("DistortionParams: K must be finite and >= 1");
    }
    if (n < 2) throw std::invalid_argument("DistortionParams: n must be >= 2");
    beta = std::pow(K, 1.0 / (n - 1));
    alpha = 1.0 / beta;
  }
};

struct LambdaBounds {
  double lo;
  double hi;
};

// Enclosure for the n-dimensional ring constant: 4 <= lambda_n <= 2e^{n-1},
// with the exact value lambda_2 = 4 in the plane.
inline LambdaBounds lambda_bounds(int n) {
  if (n < 2) throw std::invalid_argument("lambda_bounds: n must be >= 2");
  if (n == 2) return {4.0, 4.0};
  return {4.0, 2.0 * std::exp(static_cast<double>(n - 1))};
}

struct BoundValue {
  double value;      // exp(log_value); +inf once log_value > ~709
  double log_value;  // authoritative representation
  bool valid;        // false when stated hypotheses fail; value is then NaN
  std::string formula;
  std::string note;
};

inline BoundValue bound_from_log(double log_value, std::string formula,
                                 bool valid = true, std::string note = "") {
  BoundValue b;
  b.log_value = log_value;
  b.value = valid ? std::exp(log_value) : std::numeric_limits<double>::quiet_NaN();
  b.valid = valid;
  b.formula = std::move(formula);
  b.note = std::move(note);
  return b;
}

// log of the linear-distortion majorant m(K):
//   m(K) <= min( exp(4K(K+1) sqrt(K-1)),  (K-1)^{1-K} e^{9(K-1)} )  for K > 1,
// the second branch only stated (and only used) for K <= 1.01, where it is
// the smaller one; m(1) = 1.
inline double log_eta_m_bound(const DistortionParams& p) {
  const double d = p.K - 1.0;
  if (d == 0.0) return 0.0;
  const double general = 4.0 * p.K * (p.K + 1.0) * std::sqrt(d);
  if (p.K <= 1.01) {
    const double improved = (1.0 - p.K) * std::log(d) + 9.0 * d;
    return std::min(general, improved);
  }
  return general;
}

inline double eta_m_bound(const DistortionParams& p) {
  return std::exp(log_eta_m_bound(p));
}

// log of the sharpened power factor: lambda^{1-alpha} can be replaced by
//   min( lambda_hi^{1-alpha},  2^{1-1/K} K ),
// and lambda^{beta-1} = (lambda^{1-alpha})^{beta} inherits the same
// refinement with exponent beta.
inline double log_lambda_power(const DistortionParams& p, const LambdaBounds& lam) {
  if (!(lam.hi >= lam.lo) || !(lam.lo > 0.0)) {
    throw std::invalid_argument("log_lambda_power: need 0 < lo <= hi");
  }
  const double plain = (1.0 - p.alpha) * std::log(lam.hi);
  const double refined = (1.0 - 1.0 / p.K) * std::numbers::ln2 + std::log(p.K);
  return std::min(plain, refined);
}

// Two-branch distortion function bound:
//   eta(t) <= m lambda^{1-alpha} t^alpha   for t <= 1,
//   eta(t) <= m lambda^{beta-1} t^beta     for t >= 1,
// evaluated with the refined lambda power.  At t = 1 the first branch is
// used; the branches differ there by the factor lambda^{beta-1-(1-alpha)},
// so the envelope is genuinely discontinuous for K > 1.  eta(0) = 0 and
// the map is the identity bound t ↦ t when K = 1.
inline double eta_upper(double t, const DistortionParams& p, const LambdaBounds& lam) {
  if (!(t >= 0.0)) throw std::invalid_argument("eta_upper: t must be >= 0");
  if (p.K == 1.0) return t;
  if (t == 0.0) return 0.0;
  const double lm = log_eta_m_bound(p);
  const double lf = log_lambda_power(p, lam);
  const double lg = (t <= 1.0) ? lm + lf + p.alpha * std::log(t)
                               : lm + p.beta * lf + p.beta * std::log(t);
  return std::exp(lg);
}

// Matching lower bound for the inverse distortion function:
//   eta^{-1}(t) >= lambda^{1-beta} (t/m)^beta   for t <= m,
//   eta^{-1}(t) >= lambda^{alpha-1} (t/m)^alpha for t >= m.
// Composing matched branches with eta_upper returns the argument exactly;
// always eta_inverse_lower(t) <= t <= eta_upper(t).
inline double eta_inverse_lower(double t, const DistortionParams& p, const LambdaBounds& lam) {
  if (!(t >= 0.0)) throw std::invalid_argument("eta_inverse_lower: t must be >= 0");
  if (p.K == 1.0) return t;
  if (t == 0.0) return 0.0;
  const double lm = log_eta_m_bound(p);
  const double lf = log_lambda_power(p, lam);
  const double lt = std::log(t);
  const double lg = (lt <= lm) ? -p.beta * lf + p.beta * (lt - lm)
                               : -lf + p.alpha * (lt - lm);
  return std::exp(lg);
}

// Hölder constant on the unit ball for maps fixing 0 (exponent alpha):
//   M_1 = m lambda^{beta-1}.
// The default can be overridden wherever a caller has a better constant for
// a restricted class of maps; all downstream bounds accept the hook.
using M1Function = std::function<BoundValue(const DistortionParams&, const LambdaBounds&)>;

inline BoundValue m1_default(const DistortionParams& p, const LambdaBounds& lam) {
  const double lg = log_eta_m_bound(p) + p.beta * log_lambda_power(p, lam);
  return bound_from_log(lg, "m1 = m(K) lambda^(beta-1)");
}

inline BoundValue m1_value(const DistortionParams& p, const LambdaBounds& lam,
                           const M1Function& m1fn = nullptr) {
  return m1fn ? m1fn(p, lam) : m1_default(p, lam);
}

// Radius produced by the distortion theorem for maps fixing 0, e_1, ∞:
//   u = 32^{1-beta},  R = sqrt((1+u)/(1-u))  (so (R^2-1)/(R^2+1) = u).
// Blows up as K → 1 and is undefined at K = 1 itself.
inline double theorem_R(const DistortionParams& p) {
  if (p.K == 1.0) {
    throw std::domain_error("theorem_R: undefined at K = 1 (radius diverges)");
  }
  const double u = std::exp((1.0 - p.beta) * std::log(32.0));
  return std::sqrt((1.0 + u) / (1.0 - u));
}

// Two-point Hölder constant in the chordal metric for pairs split by the
// unit sphere, on the region |x|, 1/|y| <= 1/R:
//   Mhat_2(R) = M_1 m lambda^{beta-1} R^{beta-alpha}.
inline BoundValue m2_hat(const DistortionParams& p, const LambdaBounds& lam, double R,
                         const M1Function& m1fn = nullptr) {
  if (!(R >= 1.0)) throw std::invalid_argument("m2_hat: R must be >= 1");
  const double lg = m1_value(p, lam, m1fn).log_value + log_eta_m_bound(p) +
                    p.beta * log_lambda_power(p, lam) + (p.beta - p.alpha) * std::log(R);
  return bound_from_log(lg, "m2_hat = M1 m(K) lambda^(beta-1) R^(beta-alpha)");
}

// Global chordal Hölder constant for maps fixing 0, e_1, ∞ (exponent alpha):
//   M_4 = Mhat_2(R*) m^{2 alpha} lambda^{2(1-alpha)} (1 + 0.13 (1-alpha)),
// with R* from theorem_R.  Extends by its limit value 1 at K = 1.
inline BoundValue m4_sharp(const DistortionParams& p, const LambdaBounds& lam,
                           const M1Function& m1fn = nullptr) {
  const std::string formula =
      "m4 = m2_hat(R*) m(K)^(2 alpha) lambda^(2(1-alpha)) (1+0.13(1-alpha))";
  if (p.K == 1.0) return bound_from_log(0.0, formula, true, "limit value at K = 1");
  const double lg = m2_hat(p, lam, theorem_R(p), m1fn).log_value +
                    2.0 * p.alpha * log_eta_m_bound(p) + 2.0 * log_lambda_power(p, lam) +
                    std::log1p(0.13 * (1.0 - p.alpha));
  return bound_from_log(lg, formula);
}

// The crude version of the global constant and the closed-form caps it is
// dominated by on the stated K-ranges.
struct M4Crude {
  BoundValue structured;  // m^4 lambda_hi^{4(beta-1)} e^{0.73 sqrt(beta-1)} (1+0.13(1-alpha)); K <= 2
  BoundValue cap7;        // exp(7 sqrt(K-1));   K <= 1.01
  BoundValue cap106;      // exp(106 sqrt(K-1)); K <= 2
  BoundValue cap138;      // exp(138 sqrt(K-1)); K <= 2
};

inline M4Crude m4_crude(const DistortionParams& p, const LambdaBounds& lam) {
  M4Crude out;
  const double rt = std::sqrt(p.K - 1.0);
  const double lg = 4.0 * log_eta_m_bound(p) +
                    4.0 * (p.beta - 1.0) * std::log(lam.hi) +
                    0.73 * std::sqrt(p.beta - 1.0) + std::log1p(0.13 * (1.0 - p.alpha));
  out.structured = bound_from_log(
      lg, "m4_crude = m(K)^4 lambda_hi^(4(beta-1)) exp(0.73 sqrt(beta-1)) (1+0.13(1-alpha))",
      p.K <= 2.0, p.K <= 2.0 ? "" : "stated for K <= 2 only");
  out.cap7 = bound_from_log(7.0 * rt, "exp(7 sqrt(K-1))", p.K <= 1.01,
                            p.K <= 1.01 ? "" : "stated for K <= 1.01 only");
  out.cap106 = bound_from_log(106.0 * rt, "exp(106 sqrt(K-1))", p.K <= 2.0,
                              p.K <= 2.0 ? "" : "stated for K <= 2 only");
  out.cap138 = bound_from_log(138.0 * rt, "exp(138 sqrt(K-1))", p.K <= 2.0,
                              p.K <= 2.0 ? "" : "stated for K <= 2 only");
  return out;
}

// Chordal Hölder constant on the unit ball for maps of the ball fixing 0:
//   M_3^ball = M_1^{1+2 alpha} (1 + 0.13 (1-alpha)),
// and its global-sphere companion M_3 = 2^{1-alpha/2} M_3^ball, the extra
// factor paying for the chord split through the unit sphere.  The global
// constant does not tend to 1 as K → 1 (it tends to sqrt(2)).
inline BoundValue m3_ball(const DistortionParams& p, const LambdaBounds& lam,
                          const M1Function& m1fn = nullptr) {
  const double lg = (1.0 + 2.0 * p.alpha) * m1_value(p, lam, m1fn).log_value +
                    std::log1p(0.13 * (1.0 - p.alpha));
  return bound_from_log(lg, "m3_ball = M1^(1+2 alpha) (1+0.13(1-alpha))");
}

inline BoundValue m3_global(const DistortionParams& p, const LambdaBounds& lam,
                            const M1Function& m1fn = nullptr) {
  const BoundValue ball = m3_ball(p, lam, m1fn);
  const double factor = std::pow(2.0, 1.0 - 0.5 * p.alpha);
  BoundValue b;
  b.log_value = (1.0 - 0.5 * p.alpha) * std::numbers::ln2 + ball.log_value;
  b.value = factor * ball.value;  // product form keeps the ratio to m3_ball exact
  b.valid = ball.valid;
  b.formula = "m3 = 2^(1-alpha/2) m3_ball";
  b.note = ball.note;
  return b;
}

// Lift of a Euclidean Hölder bound |f(x)-f(y)| <= M |x-y|^gamma on the unit
// ball (f(0)=0, image in the ball) to the chordal metric on the same ball:
//   q(f(x),f(y)) <= M^{1+2 gamma} (1 + 0.13 (1-gamma)) q(x,y)^gamma.
inline double holder_lift(double M, double gamma) {
  if (!(M >= 1.0)) throw std::invalid_argument("holder_lift: M must be >= 1");
  if (!(gamma > 0.0) || !(gamma <= 1.0)) {
    throw std::invalid_argument("holder_lift: gamma must lie in (0, 1]");
  }
  return std::pow(M, 1.0 + 2.0 * gamma) * (1.0 + 0.13 * (1.0 - gamma));
}

// Euclidean Hölder constant on a ball of radius R recovered from a chordal
// constant M_3 there:
//   M_1' = M_3^{1+2 alpha} / ((1+R)^alpha - M_3^2 R^alpha) (1+0.13(1-alpha)),
// valid only while (1/R + 1)^alpha > M_3^2 and the denominator is positive
// (both conditions are checked literally; they differ for R > 1).
inline BoundValue m1_from_m3(const DistortionParams& p, double R, double M3) {
  if (!(R > 0.0)) throw std::invalid_argument("m1_from_m3: R must be > 0");
  if (!(M3 >= 1.0)) throw std::invalid_argument("m1_from_m3: M3 must be >= 1");
  const std::string formula =
      "m1' = M3^(1+2 alpha) / ((1+R)^alpha - M3^2 R^alpha) (1+0.13(1-alpha))";
  const bool hyp = std::pow(1.0 / R + 1.0, p.alpha) > M3 * M3;
  const double den = std::pow(1.0 + R, p.alpha) - M3 * M3 * std::pow(R, p.alpha);
  if (!hyp || !(den > 0.0)) {
    return bound_from_log(std::numeric_limits<double>::quiet_NaN(), formula, false,
                          "requires (1/R+1)^alpha > M3^2 and a positive denominator");
  }
  const double lg = (1.0 + 2.0 * p.alpha) * std::log(M3) - std::log(den) +
                    std::log1p(0.13 * (1.0 - p.alpha));
  return bound_from_log(lg, formula);
}

// Planar comparison constant 128 * 2^{(1-K)/(2K)} for the chordal Hölder
// inequality with exponent 1/K on the sphere; larger than m4_sharp for K
// near 1 but uniform in a different normalisation.
inline double bonfert_bound(double K) {
  if (!std::isfinite(K) || !(K >= 1.0)) {
    throw std::invalid_argument("bonfert_bound: K must be finite and >= 1");
  }
  return 128.0 * std::pow(2.0, (1.0 - K) / (2.0 * K));
}

// Radius in the auxiliary inversion lemma: every point of the region
// { x in R^2 : x_2 < -1/R, |x| <= R } maps under inversion in S^1(e_2, sqrt2)
// into the ball of radius sqrt((R^3+R-2)/(R^3+R+2)).
inline double aux_radius(double R) {
  if (!(R >= 1.0)) throw std::invalid_argument("aux_radius: R must be >= 1");
  return std::sqrt((R * R * R + R - 2.0) / (R * R * R + R + 2.0));
}

// Quasisymmetry on the real line, extended to the chordal metric:
//   q(f(x), f(y)) <= C(K) q(x,y)^{1/L},  L = min(K^{3/2}, 2K-1),
//   C(K) = (1/2) 16^{1-1/L} (r^3 + r + sqrt((r^3+r)^2 - 4)),
// where r <= min(m(L), e^{pi (L - 1/L)}) bounds the planar distortion at 1.
struct QsBound {
  double K;         // quasisymmetry constant of the line map
  double L;         // distortion of the planar extension
  double exponent;  // 1/L
  double log_r;     // log of the distortion-at-1 bound
  BoundValue c;     // the chordal constant C(K)
};

inline QsBound qs_spherical_bound(double K) {
  if (!std::isfinite(K) || !(K >= 1.0)) {
    throw std::invalid_argument("qs_spherical_bound: K must be finite and >= 1");
  }
  QsBound out;
  out.K = K;
  out.L = std::min(std::pow(K, 1.5), 2.0 * K - 1.0);
  out.exponent = 1.0 / out.L;
  const DistortionParams pl(out.L, 2);
  out.log_r = std::min(log_eta_m_bound(pl), std::numbers::pi * (out.L - 1.0 / out.L));
  const std::string formula = "C = (1/2) 16^(1-1/L) (r^3 + r + sqrt((r^3+r)^2 - 4))";
  const double lead = std::log(0.5) + (1.0 - out.exponent) * std::log(16.0);
  if (out.log_r < 230.0) {
    const double r = std::exp(out.log_r);
    const double s = r * r * r + r;
    const double v = 0.5 * std::pow(16.0, 1.0 - out.exponent) * (s + std::sqrt(s * s - 4.0));
    BoundValue b;
    b.value = v;
    b.log_value = std::log(v);
    b.valid = true;
    b.formula = formula;
    b.note = "";
    out.c = b;
  } else {
    // r^3 dominates: s + sqrt(s^2-4) = 2s (1 + O(s^-2)), s = r^3 (1 + r^-2).
    const double lg = lead + std::numbers::ln2 + 3.0 * out.log_r +
                      std::log1p(std::exp(-2.0 * out.log_r));
    out.c = bound_from_log(lg, formula, true, "evaluated in log space");
  }
  return out;
}

}  // namespace qcdist
