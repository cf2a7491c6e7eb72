#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <qcdist/bounds.hpp>
#include <qcdist/maps.hpp>
#include <qcdist/sampling.hpp>

using namespace qcdist;

namespace {

ExtendedPoint pt(std::initializer_list<double> c) { return ExtendedPoint(std::vector<double>(c)); }

// Finite-difference derivative of f along direction u at x0.
std::vector<double> fd_derivative(const QCTestMap& f, const std::vector<double>& x0,
                                  const std::vector<double>& u, double h) {
  std::vector<double> plus(x0), minus(x0);
  for (std::size_t i = 0; i < x0.size(); ++i) {
    plus[i] += h * u[i];
    minus[i] -= h * u[i];
  }
  const ExtendedPoint fp = evaluate(f, ExtendedPoint(plus));
  const ExtendedPoint fm = evaluate(f, ExtendedPoint(minus));
  std::vector<double> d(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) d[i] = (fp[i] - fm[i]) / (2.0 * h);
  return d;
}

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("radial stretch evaluates and reports its exact constant", "[maps]") {
  const QCTestMap f = QCTestMap::radial_stretch(0.5, 2);
  CHECK(evaluate(f, pt({4, 0})) == pt({2, 0}));
  CHECK(evaluate(f, ExtendedPoint::zero(2)) == ExtendedPoint::zero(2));
  CHECK(evaluate(f, ExtendedPoint::infinity(2)) == ExtendedPoint::infinity(2));
  CHECK(evaluate(f, pt({1, 0})) == pt({1, 0}));
  CHECK(evaluate(f, pt({0.25, 0})) == pt({0.5, 0}));
  CHECK(f.qc_constant() == 2.0);
  CHECK(f.qc_constant_is_tight());
  CHECK(f.fixes_origin());
  CHECK(f.fixes_infinity());
  CHECK(f.fixes_e1());
  CHECK(f.maps_ball_to_ball());
  CHECK(f.maps_exterior_to_exterior());
  CHECK_THROWS_AS(evaluate(f, pt({1, 2, 3})), std::invalid_argument);

  CHECK(qc_constant_of_radial_stretch(0.5, 3) == 4.0);
  CHECK(QCTestMap::radial_stretch(1.0, 2).qc_constant() == 1.0);
  CHECK_THROWS_AS(QCTestMap::radial_stretch(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(QCTestMap::radial_stretch(1.5, 2), std::invalid_argument);
  CHECK_THROWS_AS(QCTestMap::radial_stretch(0.5, 1), std::invalid_argument);

  SECTION("exponent chosen from K gives distortion exactly K") {
    for (double K : {1.0, 1.3, 2.0, 4.0}) {
      for (int n : {2, 3, 5}) {
        const DistortionParams p(K, n);
        const QCTestMap g = QCTestMap::radial_stretch(p.alpha, n);
        REQUIRE(g.qc_constant() == Catch::Approx(K).epsilon(1e-13));
      }
    }
  }

  SECTION("derivative ratios match the stated dilatation") {
    const double a = 0.6;
    const QCTestMap g = QCTestMap::radial_stretch(a, 2);
    const std::vector<double> x0 = {0.7, 0.3};
    const double r = vec_norm(x0);
    const std::vector<double> radial = {x0[0] / r, x0[1] / r};
    const std::vector<double> tangential = {-x0[1] / r, x0[0] / r};
    const double dr = vec_norm(fd_derivative(g, x0, radial, 1e-6));
    const double dt = vec_norm(fd_derivative(g, x0, tangential, 1e-6));
    CHECK(dr == Catch::Approx(a * std::pow(r, a - 1.0)).epsilon(1e-5));
    CHECK(dt == Catch::Approx(std::pow(r, a - 1.0)).epsilon(1e-5));
    CHECK(dt / dr == Catch::Approx(1.0 / a).epsilon(1e-5));
    // Linear dilatation^(n-1) is the reported constant.
    CHECK(std::pow(dt / dr, 1) == Catch::Approx(g.qc_constant()).epsilon(1e-4));
  }
}

TEST_CASE("disk automorphism test map", "[maps]") {
  const QCTestMap f = QCTestMap::mobius_disk({0.5, 0.0});
  CHECK(f.qc_constant() == 1.0);
  CHECK(f.qc_constant_is_tight());
  CHECK_FALSE(f.fixes_origin());
  CHECK_FALSE(f.fixes_infinity());
  CHECK(f.fixes_e1());
  CHECK(f.maps_ball_to_ball());
  const ExtendedPoint img = evaluate(f, pt({1, 0}));
  CHECK(img[0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(img[1] == Catch::Approx(0.0).margin(1e-15));

  const QCTestMap g = QCTestMap::mobius_disk({0.3, 0.4});
  CHECK_FALSE(g.fixes_e1());
  CHECK(QCTestMap::mobius_disk({0.0, 0.0}).fixes_origin());
  CHECK_THROWS_AS(QCTestMap::mobius_disk({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("inversion conjugation swaps the fixed ends", "[maps]") {
  const QCTestMap inner = QCTestMap::radial_stretch(0.5, 2);
  const QCTestMap f = QCTestMap::inversion_conjugate(inner);
  CHECK(f.qc_constant() == 2.0);
  CHECK(f.qc_constant_is_tight());
  CHECK(f.fixes_origin());
  CHECK(f.fixes_infinity());
  CHECK(f.fixes_e1());
  CHECK(f.maps_ball_to_ball());
  CHECK(f.maps_exterior_to_exterior());

  // invconj(stretch) expands outside: 2 e1 -> sqrt(2)/... -> 2^{1/2} e1 * 2^{1/2} = 2^{3/2}/2.
  const ExtendedPoint y = evaluate(f, pt({2, 0}));
  CHECK(y[0] == Catch::Approx(std::numbers::sqrt2).epsilon(1e-14));
  CHECK(y[1] == 0.0);
  CHECK(evaluate(f, ExtendedPoint::zero(2)) == ExtendedPoint::zero(2));
  CHECK(evaluate(f, ExtendedPoint::infinity(2)) == ExtendedPoint::infinity(2));

  SECTION("conjugation preserves chordal distances of image pairs") {
    for (long i = 0; i < 2000; ++i) {
      IndexedRng rng(31, 8, static_cast<std::uint64_t>(i));
      const ExtendedPoint x = sample_sphere_point(rng, 2, 0.01);
      const ExtendedPoint z = sample_sphere_point(rng, 2, 0.01);
      const double via_f = spherical_distance(evaluate(f, x), evaluate(f, z));
      const double via_inner = spherical_distance(evaluate(inner, unit_inversion(x)),
                                                  evaluate(inner, unit_inversion(z)));
      REQUIRE(via_f == Catch::Approx(via_inner).margin(1e-13));
    }
  }

  SECTION("a ball-contracting inner map yields an exterior-contracting conjugate") {
    const QCTestMap half = QCTestMap::mobius_disk({0.5, 0.0});
    const QCTestMap conj = QCTestMap::inversion_conjugate(half);
    CHECK(conj.maps_exterior_to_exterior());  // inner maps ball to ball
    CHECK(conj.fixes_origin() == half.fixes_infinity());
    CHECK(conj.fixes_infinity() == half.fixes_origin());
  }
}

TEST_CASE("piecewise linear quasisymmetric line map", "[maps]") {
  const QCTestMap f = QCTestMap::piecewise_linear_qs(3.0);
  CHECK(f.dim() == 1);
  CHECK(f.qc_constant() == 3.0);
  CHECK(QCTestMap::piecewise_linear_qs(0.25).qc_constant() == 4.0);
  CHECK(lv_qs_constant(1.0) == 1.0);
  CHECK_THROWS_AS(QCTestMap::piecewise_linear_qs(0.0), std::invalid_argument);
  CHECK_THROWS_AS(QCTestMap::piecewise_linear_qs(-2.0), std::invalid_argument);

  CHECK(evaluate(f, pt({2.0})) == pt({2.0}));
  CHECK(evaluate(f, pt({-2.0})) == pt({-6.0}));
  CHECK(evaluate(f, pt({0.0})) == pt({0.0}));
  CHECK(evaluate(f, ExtendedPoint::infinity(1)) == ExtendedPoint::infinity(1));
  CHECK_THROWS_AS(evaluate(f, pt({1.0, 2.0})), std::invalid_argument);

  // The quasisymmetry ratio at the kink attains the constant.
  const double num = evaluate(f, pt({1.0}))[0] - evaluate(f, pt({0.0}))[0];
  const double den = evaluate(f, pt({0.0}))[0] - evaluate(f, pt({-1.0}))[0];
  CHECK(lv_qs_constant(3.0) == Catch::Approx(std::max(num / den, den / num)).epsilon(1e-15));

  CHECK(f.fixes_origin());
  CHECK(f.fixes_infinity());
  CHECK(f.fixes_e1());
  CHECK_FALSE(f.maps_ball_to_ball());
  CHECK(QCTestMap::piecewise_linear_qs(1.0).maps_ball_to_ball());
}

TEST_CASE("compositions multiply constants but are not tight", "[maps]") {
  const QCTestMap s = QCTestMap::radial_stretch(0.5, 2);
  const QCTestMap f = QCTestMap::composition({s, s});
  CHECK(f.qc_constant() == 4.0);
  CHECK_FALSE(f.qc_constant_is_tight());
  CHECK(f.fixes_origin());
  CHECK(f.dim() == 2);

  // Two stretches compose to the stretch with the product exponent.
  const QCTestMap direct = QCTestMap::radial_stretch(0.25, 2);
  for (long i = 0; i < 500; ++i) {
    IndexedRng rng(37, 9, static_cast<std::uint64_t>(i));
    const ExtendedPoint x = sample_sphere_point(rng, 2, 0.0);
    const ExtendedPoint via = evaluate(f, x);
    const ExtendedPoint want = evaluate(direct, x);
    REQUIRE(euclidean_distance(via, want) <= 1e-12 * (1.0 + norm(want)));
  }

  CHECK_THROWS_AS(QCTestMap::composition({}), std::invalid_argument);
  CHECK_THROWS_AS(
      QCTestMap::composition({s, QCTestMap::piecewise_linear_qs(2.0)}),
      std::invalid_argument);  // mixed dimensions
}

TEST_CASE("map grammar round-trips and rejects malformed specs", "[maps]") {
  const char* specs[] = {
      "stretch:a=0.5,n=2",
      "stretch:a=0.69999999999999996,n=5",
      "qs:lambda=2.5",
      "mobius:ax=0.29999999999999999,ay=-0.40000000000000002",
      "invconj(stretch:a=0.5,n=2)",
      "compose(stretch:a=0.5,n=2;invconj(stretch:a=0.75,n=2))",
      "compose(qs:lambda=2;qs:lambda=0.5)",
  };
  for (const char* s : specs) {
    const QCTestMap f = parse_map_spec(s);
    const QCTestMap g = parse_map_spec(f.to_string());
    REQUIRE(g.to_string() == f.to_string());
  }

  // Whitespace and default fields are accepted.
  CHECK(parse_map_spec("mobius:ax=0.5").to_string() == "mobius:ax=0.5,ay=0");
  CHECK(parse_map_spec(" stretch:a=0.5 , n=2 ").qc_constant() == 2.0);

  // Parsed values survive exactly.
  const QCTestMap f = parse_map_spec("stretch:a=0.12345678901234567,n=3");
  CHECK(f.a == 0.12345678901234567);
  CHECK(f.n == 3);

  for (const char* bad : {
           "",
           "nonsense",
           "stretch:a=0.5",          // missing dimension
           "stretch:a=0,n=2",        // exponent out of range
           "stretch:a=0.5,n=2.5",    // fractional dimension
           "stretch:a=0.5,n=2 x",    // trailing input
           "qs:lambda=-1",
           "mobius:ax=2",            // |a| >= 1
           "invconj(qs:lambda=2",    // missing ')'
           "compose()",
           "compose(stretch:a=0.5,n=2;qs:lambda=2)",  // mixed dimensions
       }) {
    CHECK_THROWS_AS(parse_map_spec(bad), std::invalid_argument);
  }
}
