#pragma once

// Concrete quasiconformal / quasisymmetric test maps with known constants,
// used to probe the sharpness of the Hölder bounds.  Each map knows its
// distortion constant, whether that constant is exact or only an upper
// bound, and which normalisation points it fixes.

#include <cctype>
#include <complex>
#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "extended_point.hpp"
#include "geometry.hpp"

namespace qcdist {

// K of the radial stretch x ↦ x |x|^{a-1} in R^n: the stretch is
// a-quasiconformal with K = a^{1-n} for 0 < a <= 1.
inline double qc_constant_of_radial_stretch(double a, int n) {
  if (!(a > 0.0) || !(a <= 1.0)) {
    throw std::invalid_argument("radial stretch: exponent must lie in (0, 1]");
  }
  if (n < 2) throw std::invalid_argument("radial stretch: dimension must be >= 2");
  return std::pow(a, 1.0 - n);
}

// Quasisymmetry constant of the piecewise-linear line map g(x) = x for
// x >= 0, g(x) = lambda x for x < 0: sup over x, t of max(rho, 1/rho) for
// rho = (g(x+t)-g(x))/(g(x)-g(x-t)) equals max(lambda, 1/lambda).
inline double lv_qs_constant(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("piecewise linear map: slope must be positive and finite");
  }
  return std::max(lambda, 1.0 / lambda);
}

struct QCTestMap {
  enum class Kind { radial_stretch, mobius_disk, inversion_conjugate, piecewise_linear_qs, composition };

  Kind kind = Kind::radial_stretch;
  int n = 2;                          // ambient dimension
  double a = 1.0;                     // radial stretch exponent
  double lambda = 1.0;                // piecewise-linear slope
  std::complex<double> mobius{0, 0};  // disk automorphism parameter
  std::vector<QCTestMap> members;     // inner map / composition factors (applied left to right)

  static QCTestMap radial_stretch(double a, int n) {
    qc_constant_of_radial_stretch(a, n);  // validate
    QCTestMap f;
    f.kind = Kind::radial_stretch;
    f.a = a;
    f.n = n;
    return f;
  }

  static QCTestMap mobius_disk(std::complex<double> a) {
    DiskAutomorphism check(a);  // validate |a| < 1
    QCTestMap f;
    f.kind = Kind::mobius_disk;
    f.mobius = a;
    f.n = 2;
    return f;
  }

  static QCTestMap inversion_conjugate(QCTestMap inner) {
    QCTestMap f;
    f.kind = Kind::inversion_conjugate;
    f.n = inner.n;
    f.members.push_back(std::move(inner));
    return f;
  }

  static QCTestMap piecewise_linear_qs(double lambda) {
    lv_qs_constant(lambda);  // validate
    QCTestMap f;
    f.kind = Kind::piecewise_linear_qs;
    f.lambda = lambda;
    f.n = 1;
    return f;
  }

  static QCTestMap composition(std::vector<QCTestMap> parts) {
    if (parts.empty()) throw std::invalid_argument("composition: needs at least one factor");
    const int d = parts.front().n;
    for (const QCTestMap& g : parts) {
      if (g.n != d) throw std::invalid_argument("composition: mixed dimensions");
    }
    QCTestMap f;
    f.kind = Kind::composition;
    f.n = d;
    f.members = std::move(parts);
    return f;
  }

  int dim() const { return n; }

  // Distortion constant; exact except for compositions, where it is the
  // product of the factors' constants (an upper bound only).
  double qc_constant() const {
    switch (kind) {
      case Kind::radial_stretch:
        return qc_constant_of_radial_stretch(a, n);
      case Kind::mobius_disk:
        return 1.0;
      case Kind::inversion_conjugate:
        return members.front().qc_constant();
      case Kind::piecewise_linear_qs:
        return lv_qs_constant(lambda);
      case Kind::composition: {
        double k = 1.0;
        for (const QCTestMap& g : members) k *= g.qc_constant();
        return k;
      }
    }
    std::abort();
  }

  bool qc_constant_is_tight() const {
    if (kind == Kind::composition) return false;
    if (kind == Kind::inversion_conjugate) return members.front().qc_constant_is_tight();
    return true;
  }

  bool fixes_origin() const {
    switch (kind) {
      case Kind::radial_stretch:
      case Kind::piecewise_linear_qs:
        return true;
      case Kind::mobius_disk:
        return mobius == std::complex<double>(0.0, 0.0);
      case Kind::inversion_conjugate:
        return members.front().fixes_infinity();
      case Kind::composition: {
        for (const QCTestMap& g : members) {
          if (!g.fixes_origin()) return false;
        }
        return true;
      }
    }
    std::abort();
  }

  bool fixes_infinity() const {
    switch (kind) {
      case Kind::radial_stretch:
      case Kind::piecewise_linear_qs:
        return true;
      case Kind::mobius_disk:
        return mobius == std::complex<double>(0.0, 0.0);
      case Kind::inversion_conjugate:
        return members.front().fixes_origin();
      case Kind::composition: {
        for (const QCTestMap& g : members) {
          if (!g.fixes_infinity()) return false;
        }
        return true;
      }
    }
    std::abort();
  }

  bool fixes_e1() const {
    switch (kind) {
      case Kind::radial_stretch:
      case Kind::piecewise_linear_qs:
        return true;
      case Kind::mobius_disk:
        // (1-a)/(1-conj(a)) = 1 exactly when a is real.
        return mobius.imag() == 0.0;
      case Kind::inversion_conjugate:
        return members.front().fixes_e1();
      case Kind::composition: {
        for (const QCTestMap& g : members) {
          if (!g.fixes_e1()) return false;
        }
        return true;
      }
    }
    std::abort();
  }

  // Whether the closed unit ball maps into itself.
  bool maps_ball_to_ball() const {
    switch (kind) {
      case Kind::radial_stretch:
      case Kind::mobius_disk:
        return true;
      case Kind::piecewise_linear_qs:
        return lambda == 1.0;
      case Kind::inversion_conjugate:
        return members.front().maps_exterior_to_exterior();
      case Kind::composition: {
        for (const QCTestMap& g : members) {
          if (!g.maps_ball_to_ball()) return false;
        }
        return true;
      }
    }
    std::abort();
  }

  // Whether the closed exterior of the unit ball maps into itself.
  bool maps_exterior_to_exterior() const {
    switch (kind) {
      case Kind::radial_stretch:
      case Kind::mobius_disk:
        return true;
      case Kind::piecewise_linear_qs:
        return lambda == 1.0;
      case Kind::inversion_conjugate:
        return members.front().maps_ball_to_ball();
      case Kind::composition: {
        for (const QCTestMap& g : members) {
          if (!g.maps_exterior_to_exterior()) return false;
        }
        return true;
      }
    }
    std::abort();
  }

  std::string to_string() const;
};

inline ExtendedPoint evaluate(const QCTestMap& f, const ExtendedPoint& x);

namespace detail {

inline ExtendedPoint eval_radial_stretch(const QCTestMap& f, const ExtendedPoint& x) {
  if (x.dim() != f.n) throw std::invalid_argument("radial stretch: dimension mismatch");
  if (x.is_infinity()) return x;
  const double r = norm(x);
  if (r == 0.0 || f.a == 1.0) return x;
  const double scale = std::pow(r, f.a - 1.0);
  std::vector<double> out(x.coords());
  double big = 0.0;
  for (double& v : out) {
    v *= scale;
    big = std::max(big, std::fabs(v));
  }
  if (big > kMagnitudeCap) return ExtendedPoint::infinity(f.n);
  return ExtendedPoint(std::move(out));
}

inline ExtendedPoint eval_piecewise_linear(const QCTestMap& f, const ExtendedPoint& x) {
  if (x.dim() != 1) throw std::invalid_argument("piecewise linear map: expects points of R^1");
  if (x.is_infinity()) return x;
  const double t = x[0];
  const double y = t >= 0.0 ? t : f.lambda * t;
  if (std::fabs(y) > kMagnitudeCap) return ExtendedPoint::infinity(1);
  return ExtendedPoint({y});
}

}  // namespace detail

inline ExtendedPoint evaluate(const QCTestMap& f, const ExtendedPoint& x) {
  switch (f.kind) {
    case QCTestMap::Kind::radial_stretch:
      return detail::eval_radial_stretch(f, x);
    case QCTestMap::Kind::mobius_disk:
      return DiskAutomorphism(f.mobius).apply(x);
    case QCTestMap::Kind::inversion_conjugate:
      return unit_inversion(evaluate(f.members.front(), unit_inversion(x)));
    case QCTestMap::Kind::piecewise_linear_qs:
      return detail::eval_piecewise_linear(f, x);
    case QCTestMap::Kind::composition: {
      ExtendedPoint y = x;
      for (const QCTestMap& g : f.members) y = evaluate(g, y);
      return y;
    }
  }
  std::abort();
}

namespace detail {

inline std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

inline std::string QCTestMap::to_string() const {
  switch (kind) {
    case Kind::radial_stretch:
      return "stretch:a=" + detail::fmt_num(a) + ",n=" + std::to_string(n);
    case Kind::mobius_disk:
      return "mobius:ax=" + detail::fmt_num(mobius.real()) + ",ay=" + detail::fmt_num(mobius.imag());
    case Kind::inversion_conjugate:
      return "invconj(" + members.front().to_string() + ")";
    case Kind::piecewise_linear_qs:
      return "qs:lambda=" + detail::fmt_num(lambda);
    case Kind::composition: {
      std::string s = "compose(";
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) s += ";";
        s += members[i].to_string();
      }
      return s + ")";
    }
  }
  std::abort();
}

namespace detail {

// Recursive-descent parser for the map grammar:
//   stretch:a=<num>,n=<int> | qs:lambda=<num> | mobius:ax=<num>[,ay=<num>]
//   | invconj(<map>) | compose(<map>;<map>;...)
class MapParser {
 public:
  explicit MapParser(const std::string& s) : s_(s) {}

  QCTestMap parse() {
    QCTestMap f = parse_map();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("map spec '" + s_ + "': " + why + " at offset " +
                                std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a name");
    return s_.substr(start, pos_ - start);
  }

  double number() {
    skip_ws();
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s_.substr(pos_), &used);
    } catch (const std::exception&) {
      fail("expected a number");
    }
    pos_ += used;
    return v;
  }

  // key=value fields separated by commas, until end / ')' / ';'.
  std::vector<std::pair<std::string, double>> fields() {
    std::vector<std::pair<std::string, double>> out;
    while (true) {
      std::string key = ident();
      if (!eat('=')) fail("expected '=' after field name");
      out.emplace_back(key, number());
      if (!eat(',')) break;
    }
    return out;
  }

  double field(const std::vector<std::pair<std::string, double>>& fs, const std::string& key,
               const double* fallback = nullptr) {
    for (const auto& [k, v] : fs) {
      if (k == key) return v;
    }
    if (fallback) return *fallback;
    fail("missing field '" + key + "'");
  }

  QCTestMap parse_map() {
    std::string head = ident();
    if (head == "stretch") {
      if (!eat(':')) fail("expected ':' after 'stretch'");
      auto fs = fields();
      const double a = field(fs, "a");
      const double nd = field(fs, "n");
      if (nd != static_cast<int>(nd)) fail("dimension must be an integer");
      return QCTestMap::radial_stretch(a, static_cast<int>(nd));
    }
    if (head == "qs") {
      if (!eat(':')) fail("expected ':' after 'qs'");
      auto fs = fields();
      return QCTestMap::piecewise_linear_qs(field(fs, "lambda"));
    }
    if (head == "mobius") {
      if (!eat(':')) fail("expected ':' after 'mobius'");
      auto fs = fields();
      const double zero = 0.0;
      return QCTestMap::mobius_disk({field(fs, "ax"), field(fs, "ay", &zero)});
    }
    if (head == "invconj") {
      if (!eat('(')) fail("expected '(' after 'invconj'");
      QCTestMap inner = parse_map();
      if (!eat(')')) fail("expected ')'");
      return QCTestMap::inversion_conjugate(std::move(inner));
    }
    if (head == "compose") {
      if (!eat('(')) fail("expected '(' after 'compose'");
      std::vector<QCTestMap> parts;
      parts.push_back(parse_map());
      while (eat(';')) parts.push_back(parse_map());
      if (!eat(')')) fail("expected ')'");
      return QCTestMap::composition(std::move(parts));
    }
    fail("unknown map '" + head + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline QCTestMap parse_map_spec(const std::string& s) { return detail::MapParser(s).parse(); }

}  // namespace qcdist
