#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <qcdist/bounds.hpp>

using namespace qcdist;

namespace {

// Independent recomputation of the full sharp-constant pipeline in extended
// precision.  The near-1 branch selection must look at the double value of
// K, exactly as the library does: double(1.01) is slightly above the long
// double 1.01, so comparing in extended precision would flip the branch at
// the boundary.
long double oracle_log_m4_sharp(double K_input, int n) {
  const long double K = K_input;
  const long double beta = powl(K, 1.0L / (n - 1));
  const long double alpha = 1.0L / beta;
  const long double lam_hi = (n == 2) ? 4.0L : 2.0L * expl(static_cast<long double>(n - 1));
  long double lm = 0.0L;
  if (K > 1.0L) {
    lm = 4.0L * K * (K + 1.0L) * sqrtl(K - 1.0L);
    if (K_input <= 1.01) lm = fminl(lm, (1.0L - K) * logl(K - 1.0L) + 9.0L * (K - 1.0L));
  }
  const long double lf =
      fminl((1.0L - alpha) * logl(lam_hi), (1.0L - 1.0L / K) * logl(2.0L) + logl(K));
  const long double u = powl(32.0L, 1.0L - beta);
  const long double logR = 0.5L * logl((1.0L + u) / (1.0L - u));
  const long double lm1 = lm + beta * lf;
  const long double lm2 = lm1 + lm + beta * lf + (beta - alpha) * logR;
  return lm2 + 2.0L * alpha * lm + 2.0L * lf + log1pl(0.13L * (1.0L - alpha));
}

}  // namespace

TEST_CASE("distortion parameters and ring-constant enclosure", "[bounds]") {
  const DistortionParams p(2.0, 2);
  CHECK(p.beta == 2.0);
  CHECK(p.alpha == 0.5);
  for (double K : {1.0, 1.3, 2.0, 7.5}) {
    for (int n : {2, 3, 4, 7}) {
      const DistortionParams q(K, n);
      REQUIRE(q.alpha == 1.0 / q.beta);  // exact by construction
      REQUIRE(std::abs(q.alpha * q.beta - 1.0) <= 4e-16);
      REQUIRE(q.beta >= 1.0);
    }
  }
  CHECK_THROWS_AS(DistortionParams(0.5, 2), std::invalid_argument);
  CHECK_THROWS_AS(DistortionParams(std::nan(""), 2), std::invalid_argument);
  CHECK_THROWS_AS(DistortionParams(2.0, 1), std::invalid_argument);

  CHECK(lambda_bounds(2).lo == 4.0);
  CHECK(lambda_bounds(2).hi == 4.0);
  CHECK(lambda_bounds(3).hi == Catch::Approx(14.778112197861301).epsilon(1e-15));
  CHECK(lambda_bounds(5).lo == 4.0);
  CHECK(lambda_bounds(5).hi >= lambda_bounds(3).hi);
  CHECK_THROWS_AS(lambda_bounds(1), std::invalid_argument);
}

TEST_CASE("linear-distortion majorant hits its frozen values", "[bounds]") {
  CHECK(eta_m_bound(DistortionParams(1.0, 2)) == 1.0);
  CHECK(eta_m_bound(DistortionParams(1.01, 2)) ==
        Catch::Approx(1.1457411290108699).epsilon(1e-12));
  CHECK(eta_m_bound(DistortionParams(2.0, 2)) ==
        Catch::Approx(26489122129.843472).epsilon(1e-12));
  CHECK(eta_m_bound(DistortionParams(2.0, 2)) == Catch::Approx(std::exp(24.0)).epsilon(1e-15));
  // The majorant depends on K only, not on n.
  CHECK(log_eta_m_bound(DistortionParams(1.7, 2)) == log_eta_m_bound(DistortionParams(1.7, 5)));
  // The sharper near-1 branch is used only on its stated range K <= 1.01,
  // even where it would be smaller just outside it.
  const DistortionParams p102(1.02, 2);
  const double d102 = 1.02 - 1.0;  // evaluate K-1 the same way the library does
  CHECK(log_eta_m_bound(p102) == 4.0 * 1.02 * (1.02 + 1.0) * std::sqrt(d102));
  CHECK((1.0 - 1.02) * std::log(d102) + 9.0 * d102 < log_eta_m_bound(p102));
  // General branch value at 1.01 for reference.
  CHECK(4.0 * 1.01 * 2.01 * std::sqrt(0.01) ==
        Catch::Approx(std::log(2.2524983995985168)).epsilon(1e-12));

  // Monotone increasing in K on a grid.
  double prev = 0.0;
  for (double K : {1.0, 1.001, 1.01, 1.05, 1.2, 1.5, 2.0, 3.0}) {
    const double cur = log_eta_m_bound(DistortionParams(K, 2));
    REQUIRE(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("lambda power takes the smaller of its two admissible forms", "[bounds]") {
  const LambdaBounds lam2 = lambda_bounds(2);
  CHECK(log_lambda_power(DistortionParams(1.0, 2), lam2) == 0.0);
  // K = 2, n = 2: min(0.5 log 4, 0.5 log 2 + log 2) = log 2 (the plain form).
  CHECK(log_lambda_power(DistortionParams(2.0, 2), lam2) ==
        Catch::Approx(std::numbers::ln2).epsilon(1e-15));
  // The result never exceeds either admissible expression, in any dimension.
  for (double K : {1.001, 1.1, 1.7, 2.0, 3.0}) {
    for (int n : {2, 3, 5}) {
      const DistortionParams p(K, n);
      const LambdaBounds lam = lambda_bounds(n);
      const double got = log_lambda_power(p, lam);
      REQUIRE(got <= (1.0 - p.alpha) * std::log(lam.hi) + 1e-18);
      REQUIRE(got <= (1.0 - 1.0 / K) * std::numbers::ln2 + std::log(K) + 1e-18);
      REQUIRE(got >= 0.0);
    }
  }
  // In the plane the ring constant is exact (lambda = 4), and 4^(1-alpha)
  // is already below the dimension-free form 2^(1-1/K) K there.
  const DistortionParams p(1.001, 2);
  CHECK(log_lambda_power(p, lam2) == (1.0 - p.alpha) * std::log(4.0));
  CHECK_THROWS_AS(log_lambda_power(p, LambdaBounds{4.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(log_lambda_power(p, LambdaBounds{0.0, 4.0}), std::invalid_argument);
}

TEST_CASE("distortion-function envelope", "[bounds]") {
  const LambdaBounds lam2 = lambda_bounds(2);
  const DistortionParams p1(1.0, 2);
  for (double t : {0.0, 1e-8, 0.3, 1.0, 7.0, 1e9}) {
    REQUIRE(eta_upper(t, p1, lam2) == t);
    REQUIRE(eta_inverse_lower(t, p1, lam2) == t);
  }
  CHECK_THROWS_AS(eta_upper(-0.5, p1, lam2), std::invalid_argument);
  CHECK_THROWS_AS(eta_inverse_lower(-0.5, p1, lam2), std::invalid_argument);

  const DistortionParams p2(2.0, 2);
  const double m2v = eta_m_bound(p2);
  CHECK(eta_upper(1.0, p2, lam2) == Catch::Approx(52978244259.686945).epsilon(1e-12));
  CHECK(eta_upper(1.0, p2, lam2) == Catch::Approx(2.0 * m2v).epsilon(1e-14));
  // The envelope jumps by the branch mismatch factor at t = 1 (here 2).
  CHECK(eta_upper(1.0 + 1e-10, p2, lam2) / eta_upper(1.0, p2, lam2) ==
        Catch::Approx(2.0).epsilon(1e-6));
  CHECK(eta_inverse_lower(m2v, p2, lam2) == Catch::Approx(0.25).epsilon(1e-12));

  SECTION("sandwich inv <= t <= upper everywhere") {
    for (double K : {1.0, 1.0001, 1.01, 1.3, 2.0, 5.0}) {
      for (int n : {2, 3, 5}) {
        const DistortionParams p(K, n);
        const LambdaBounds lam = lambda_bounds(n);
        for (int e = -8; e <= 8; ++e) {
          const double t = std::pow(10.0, e);
          const double up = eta_upper(t, p, lam);
          const double lo = eta_inverse_lower(t, p, lam);
          REQUIRE(lo <= t * (1.0 + 1e-12));
          REQUIRE(t <= up * (1.0 + 1e-12));
        }
      }
    }
  }

  SECTION("matched-branch compositions return the argument") {
    for (double K : {1.0001, 1.3, 2.0}) {
      for (int n : {2, 3}) {
        const DistortionParams p(K, n);
        const LambdaBounds lam = lambda_bounds(n);
        const double lf = log_lambda_power(p, lam);
        // upper stays in its small branch while t <= exp(-lf/alpha).
        for (double f : {1.5, 3.0, 10.0}) {
          const double t = std::exp(-f * lf / p.alpha - 1e-3);
          const double round = eta_inverse_lower(eta_upper(t, p, lam), p, lam);
          REQUIRE(round == Catch::Approx(t).epsilon(1e-12));
        }
        // inverse stays matched for s <= m.
        const double mv = eta_m_bound(p);
        for (double sfrac : {1e-6, 1e-2, 0.5, 1.0}) {
          const double s = mv * sfrac;
          const double round = eta_upper(eta_inverse_lower(s, p, lam), p, lam);
          REQUIRE(round == Catch::Approx(s).epsilon(1e-12));
        }
      }
    }
  }

  SECTION("mismatched-window composition genuinely overshoots") {
    // At K = 2, n = 2 the round trip at t = 1/2 lands on 2^(-3/4) > 1/2,
    // because eta_upper(1/2) = sqrt(2) m already exceeds m.
    const double round = eta_inverse_lower(eta_upper(0.5, p2, lam2), p2, lam2);
    CHECK(round == Catch::Approx(0.5946035575013605).epsilon(1e-12));
    CHECK(round > 0.5);
  }
}

TEST_CASE("radius of the three-point normalisation", "[bounds]") {
  CHECK_THROWS_AS(theorem_R(DistortionParams(1.0, 2)), std::domain_error);
  CHECK(theorem_R(DistortionParams(2.0, 2)) ==
        Catch::Approx(1.031753909143192).epsilon(1e-12));
  CHECK(theorem_R(DistortionParams(2.0, 2)) ==
        Catch::Approx(std::sqrt(33.0 / 31.0)).epsilon(1e-14));
  CHECK(theorem_R(DistortionParams(1.01, 2)) ==
        Catch::Approx(7.5969452904725429).epsilon(1e-12));
  // Identity (R^2-1)/(R^2+1) = 32^{1-beta} on a K grid.
  for (double K : {1.001, 1.05, 1.5, 2.0, 3.0}) {
    const DistortionParams p(K, 2);
    const double R = theorem_R(p);
    const double u = std::exp((1.0 - p.beta) * std::log(32.0));
    REQUIRE((R * R - 1.0) / (R * R + 1.0) == Catch::Approx(u).epsilon(1e-12));
  }
  // R decreases toward 1 as K grows; blows up toward K = 1.
  CHECK(theorem_R(DistortionParams(1.0001, 2)) > theorem_R(DistortionParams(1.01, 2)));
  CHECK(theorem_R(DistortionParams(3.0, 2)) < theorem_R(DistortionParams(2.0, 2)));
  CHECK(theorem_R(DistortionParams(3.0, 2)) > 1.0);
}

TEST_CASE("Hölder constants hit their frozen values", "[bounds]") {
  const LambdaBounds lam2 = lambda_bounds(2);

  SECTION("unit-ball constant M1") {
    CHECK(m1_default(DistortionParams(1.0, 2), lam2).value == 1.0);
    CHECK(m1_default(DistortionParams(1.01, 2), lam2).value ==
          Catch::Approx(1.1617350791459023).epsilon(1e-12));
    const BoundValue m1 = m1_default(DistortionParams(2.0, 2), lam2);
    CHECK(m1.value == Catch::Approx(105956488519.37389).epsilon(1e-12));
    CHECK(m1.value == Catch::Approx(4.0 * std::exp(24.0)).epsilon(1e-14));
    CHECK(m1.valid);
    CHECK(!m1.formula.empty());
  }

  SECTION("split-pair constant M2hat") {
    const DistortionParams p(2.0, 2);
    CHECK_THROWS_AS(m2_hat(p, lam2, 0.5), std::invalid_argument);
    // At R = 1 the radius factor drops out: M1 * m * lambda^{beta-1} = 16 m^2.
    const double mv = eta_m_bound(p);
    CHECK(m2_hat(p, lam2, 1.0).value == Catch::Approx(16.0 * mv * mv).epsilon(1e-12));
    // K = 1 collapses to 1 for any admissible radius.
    CHECK(m2_hat(DistortionParams(1.0, 2), lam2, 5.0).value == 1.0);
    // Increasing in R.
    CHECK(m2_hat(p, lam2, 2.0).log_value > m2_hat(p, lam2, 1.0).log_value);
  }

  SECTION("global three-point constant M4") {
    CHECK(m4_sharp(DistortionParams(1.0, 2), lambda_bounds(2)).value == 1.0);
    CHECK(m4_sharp(DistortionParams(1.0, 5), lambda_bounds(5)).value == 1.0);
    CHECK(m4_sharp(DistortionParams(1.01, 2), lam2).value ==
          Catch::Approx(1.8933172206017223).epsilon(1e-12));
    CHECK(m4_sharp(DistortionParams(2.0, 2), lam2).log_value ==
          Catch::Approx(76.268748150257061).margin(1e-9));
    CHECK(m4_sharp(DistortionParams(1.0001, 2), lam2).value ==
          Catch::Approx(1.00875537965).epsilon(1e-9));
    CHECK(m4_sharp(DistortionParams(1.000001, 2), lam2).value ==
          Catch::Approx(1.00011020897).epsilon(1e-9));
  }

  SECTION("M4 agrees with an extended-precision recomputation") {
    for (double K : {1.001, 1.01, 1.3, 2.0}) {
      for (int n : {2, 3, 5}) {
        const double got = m4_sharp(DistortionParams(K, n), lambda_bounds(n)).log_value;
        const long double want = oracle_log_m4_sharp(K, n);
        REQUIRE(got == Catch::Approx(static_cast<double>(want))
                           .margin(1e-10 * std::max(1.0, std::abs(got))));
      }
    }
  }

  SECTION("ball-fixing constants M3") {
    CHECK(m3_ball(DistortionParams(1.0, 2), lam2).value == 1.0);
    CHECK(m3_ball(DistortionParams(1.01, 2), lam2).value ==
          Catch::Approx(1.5652751615987482).epsilon(1e-12));
    const BoundValue g = m3_global(DistortionParams(1.01, 2), lam2);
    CHECK(g.value == Catch::Approx(2.22124231920674).epsilon(1e-12));
    // The global constant tends to sqrt(2), not 1, at K = 1.
    CHECK(m3_global(DistortionParams(1.0, 2), lam2).value ==
          Catch::Approx(std::numbers::sqrt2).epsilon(1e-15));
    // The ratio to the ball constant is the exact chord-split factor.
    for (double K : {1.0, 1.2, 2.0}) {
      const DistortionParams p(K, 2);
      REQUIRE(m3_global(p, lam2).value / m3_ball(p, lam2).value ==
              Catch::Approx(std::pow(2.0, 1.0 - 0.5 * p.alpha)).epsilon(1e-15));
    }
  }

  SECTION("crude constant and closed-form caps") {
    const M4Crude c1 = m4_crude(DistortionParams(1.0001, 2), lam2);
    CHECK(c1.cap7.value == Catch::Approx(1.0725081812542165).epsilon(1e-12));
    CHECK(c1.cap7.valid);
    CHECK(c1.cap106.valid);
    CHECK(c1.cap138.valid);
    CHECK(c1.structured.valid);
    const M4Crude cK1 = m4_crude(DistortionParams(1.0, 2), lam2);
    CHECK(cK1.structured.value == 1.0);
    CHECK(cK1.cap7.value == 1.0);
    const M4Crude c2 = m4_crude(DistortionParams(1.02, 2), lam2);
    CHECK_FALSE(c2.cap7.valid);
    CHECK(std::isnan(c2.cap7.value));
    CHECK_FALSE(c2.cap7.note.empty());
    CHECK(c2.cap106.valid);
    const M4Crude c3 = m4_crude(DistortionParams(2.5, 2), lam2);
    CHECK_FALSE(c3.structured.valid);
    CHECK_FALSE(c3.cap106.valid);
    CHECK_FALSE(c3.cap138.valid);
    // cap106 <= cap138 trivially; sharp <= structured on the stated range.
    for (double K : {1.0005, 1.01, 1.3, 2.0}) {
      const DistortionParams p(K, 2);
      const M4Crude c = m4_crude(p, lam2);
      REQUIRE(c.cap106.log_value <= c.cap138.log_value);
      REQUIRE(m4_sharp(p, lam2).log_value <= c.structured.log_value + 1e-9);
    }
  }
}

TEST_CASE("Hölder lift and its inverse direction", "[bounds]") {
  CHECK(holder_lift(2.0, 0.5) == Catch::Approx(4.26).epsilon(1e-15));
  CHECK(holder_lift(1.0, 1.0) == 1.0);
  CHECK(holder_lift(3.0, 1.0) == Catch::Approx(27.0).epsilon(1e-15));
  CHECK_THROWS_AS(holder_lift(0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(holder_lift(2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(holder_lift(2.0, 1.5), std::invalid_argument);

  const DistortionParams p(1.01, 2);
  const BoundValue back = m1_from_m3(p, 1.0, 1.05);
  CHECK(back.valid);
  CHECK(back.value == Catch::Approx(1.3102147209887619).epsilon(1e-12));

  const DistortionParams p1(1.0, 2);
  CHECK(m1_from_m3(p1, 1.0, 1.0).value == 1.0);
  const BoundValue bad = m1_from_m3(p1, 1.0, 2.0);
  CHECK_FALSE(bad.valid);
  CHECK(std::isnan(bad.value));
  CHECK_FALSE(bad.note.empty());
  CHECK_THROWS_AS(m1_from_m3(p, 0.0, 1.05), std::invalid_argument);
  CHECK_THROWS_AS(m1_from_m3(p, 1.0, 0.9), std::invalid_argument);
}

TEST_CASE("planar comparison constant", "[bounds]") {
  CHECK(bonfert_bound(1.0) == 128.0);
  CHECK(bonfert_bound(2.0) == Catch::Approx(107.63474115247546).epsilon(1e-12));
  CHECK(bonfert_bound(1.01) == Catch::Approx(127.56153074089705).epsilon(1e-12));
  CHECK(bonfert_bound(3.0) < bonfert_bound(2.0));
  CHECK_THROWS_AS(bonfert_bound(0.9), std::invalid_argument);
}

TEST_CASE("auxiliary inversion radius", "[bounds]") {
  CHECK(aux_radius(1.0) == 0.0);
  CHECK(aux_radius(2.0) == Catch::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(aux_radius(2.0) == Catch::Approx(0.81649658092772603).epsilon(1e-12));
  CHECK(aux_radius(10.0) == Catch::Approx(0.99802175869569073).epsilon(1e-12));
  CHECK_THROWS_AS(aux_radius(0.5), std::invalid_argument);
  double prev = -1.0;
  for (double R : {1.0, 1.5, 2.0, 5.0, 10.0, 100.0}) {
    const double r = aux_radius(R);
    REQUIRE(r > prev);
    REQUIRE(r < 1.0);
    prev = r;
  }
}

TEST_CASE("quasisymmetric extension constant", "[bounds]") {
  const QsBound triv = qs_spherical_bound(1.0);
  CHECK(triv.L == 1.0);
  CHECK(triv.exponent == 1.0);
  CHECK(triv.c.value == 1.0);
  CHECK(triv.c.valid);

  const QsBound q15 = qs_spherical_bound(1.5);
  CHECK(q15.L == Catch::Approx(1.8371173070873836).epsilon(1e-12));
  CHECK(q15.exponent == Catch::Approx(1.0 / 1.8371173070873836).epsilon(1e-12));
  CHECK(std::exp(q15.log_r) == Catch::Approx(58.055984530210679).epsilon(1e-9));
  CHECK(q15.c.value == Catch::Approx(692388.5846550645).epsilon(1e-9));
  CHECK(q15.c.log_value == Catch::Approx(std::log(q15.c.value)).margin(1e-12));

  CHECK(qs_spherical_bound(1.21).L == Catch::Approx(1.331).epsilon(1e-12));
  CHECK(qs_spherical_bound(4.0).L == 7.0);  // 2K-1 branch, exact

  // Monotone in K on a grid.
  double prev = 0.0;
  for (double K : {1.0, 1.1, 1.5, 2.0, 3.0}) {
    const QsBound q = qs_spherical_bound(K);
    REQUIRE(q.c.log_value >= prev);
    prev = q.c.log_value;
  }

  // Far out the constant overflows a double but stays valid in log space.
  const QsBound big = qs_spherical_bound(50.0);
  CHECK(big.L == 99.0);
  CHECK(std::isinf(big.c.value));
  CHECK(big.c.valid);
  CHECK(big.c.log_value > 900.0);
  CHECK(big.c.log_value < 970.0);
  CHECK_FALSE(big.c.note.empty());

  CHECK_THROWS_AS(qs_spherical_bound(0.5), std::invalid_argument);
}

TEST_CASE("custom unit-ball constants propagate downstream", "[bounds]") {
  const DistortionParams p(1.5, 2);
  const LambdaBounds lam = lambda_bounds(2);
  const M1Function two = [](const DistortionParams&, const LambdaBounds&) {
    return bound_from_log(std::numbers::ln2, "custom M1 = 2");
  };
  const double shift = std::numbers::ln2 - m1_default(p, lam).log_value;

  CHECK(m1_value(p, lam, two).log_value == std::numbers::ln2);
  CHECK(m1_value(p, lam).log_value == m1_default(p, lam).log_value);

  CHECK(m2_hat(p, lam, 2.0, two).log_value - m2_hat(p, lam, 2.0).log_value ==
        Catch::Approx(shift).margin(1e-12));
  CHECK(m4_sharp(p, lam, two).log_value - m4_sharp(p, lam).log_value ==
        Catch::Approx(shift).margin(1e-12));
  CHECK(m3_ball(p, lam, two).log_value - m3_ball(p, lam).log_value ==
        Catch::Approx((1.0 + 2.0 * p.alpha) * shift).margin(1e-12));
  CHECK(m3_global(p, lam, two).log_value - m3_global(p, lam).log_value ==
        Catch::Approx((1.0 + 2.0 * p.alpha) * shift).margin(1e-12));
}
