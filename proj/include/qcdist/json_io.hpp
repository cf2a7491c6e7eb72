#pragma once

// Serialisation of reports and bound tables.  JSON objects are built with
// nlohmann::json (which keeps keys sorted), and CSV numbers are written with
// std::to_chars shortest-round-trip formatting, so equal inputs always
// produce byte-identical output.

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "checks.hpp"
#include "holder.hpp"

namespace qcdist {

// Shortest decimal string that round-trips the double (to_chars general form).
inline std::string num_str(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline nlohmann::json to_json(const BoundValue& b) {
  return {
      {"formula", b.formula}, {"log_value", b.log_value}, {"note", b.note},
      {"valid", b.valid},     {"value", b.value},
  };
}

inline nlohmann::json to_json(const CheckReport& r) {
  return {
      {"claim", r.claim},
      {"name", r.name},
      {"pass", r.pass},
      {"samples_used", r.samples_used},
      {"tolerance", r.tolerance},
      {"witness", r.witness},
      {"worst_margin", r.worst_margin},
  };
}

inline nlohmann::json to_json(const HolderReport& r) {
  nlohmann::json j{
      {"diag_c_sup", r.diag_c_sup},
      {"empirical_constant", r.empirical_constant},
      {"exponent", r.exponent},
      {"map", r.map},
      {"metric", metric_name(r.metric)},
      {"pairs_skipped", r.pairs_skipped},
      {"samples_used", r.samples_used},
      {"witness_x", point_json(r.witness_x)},
      {"witness_y", point_json(r.witness_y)},
  };
  if (r.has_bound) {
    j["bound"] = {{"formula", r.bound_formula},
                  {"log_value", r.bound_log},
                  {"value", r.bound_value}};
    j["slack_log"] = r.slack_log;
  }
  return j;
}

// One row of the bounds table for a (K, n) pair: every constant the library
// computes, with its validity flag where the formula is range-restricted.
struct BoundsRow {
  double K = 1.0;
  int n = 2;
  double alpha = 1.0;
  double beta = 1.0;
  double m_bound = 1.0;
  double lambda_hi = 4.0;
  BoundValue m1;
  BoundValue m3_ball;
  BoundValue m3_global;
  BoundValue m4_sharp;
  M4Crude crude;
  double bonfert = 0.0;
  bool bonfert_valid = false;  // the 128-comparison is planar (n = 2)
};

inline BoundsRow bounds_row(double K, int n) {
  const DistortionParams p(K, n);
  const LambdaBounds lam = lambda_bounds(n);
  BoundsRow row;
  row.K = K;
  row.n = n;
  row.alpha = p.alpha;
  row.beta = p.beta;
  row.m_bound = eta_m_bound(p);
  row.lambda_hi = lam.hi;
  row.m1 = m1_default(p, lam);
  row.m3_ball = m3_ball(p, lam);
  row.m3_global = m3_global(p, lam);
  row.m4_sharp = m4_sharp(p, lam);
  row.crude = m4_crude(p, lam);
  row.bonfert = bonfert_bound(K);
  row.bonfert_valid = (n == 2);
  return row;
}

inline const char* bounds_csv_header() {
  return "K,n,alpha,beta,m_bound,lambda_hi,m1_surrogate,m3_ball,m3_global,"
         "m4_sharp,log_m4_sharp,m4_crude,log_m4_crude,m4_crude_valid,"
         "cap7,cap7_valid,cap106,cap106_valid,cap138,cap138_valid,"
         "bonfert,bonfert_valid";
}

inline std::string bounds_csv_line(const BoundsRow& r) {
  std::string s;
  auto add = [&](const std::string& f) {
    if (!s.empty()) s += ",";
    s += f;
  };
  add(num_str(r.K));
  add(std::to_string(r.n));
  add(num_str(r.alpha));
  add(num_str(r.beta));
  add(num_str(r.m_bound));
  add(num_str(r.lambda_hi));
  add(num_str(r.m1.value));
  add(num_str(r.m3_ball.value));
  add(num_str(r.m3_global.value));
  add(num_str(r.m4_sharp.value));
  add(num_str(r.m4_sharp.log_value));
  add(num_str(r.crude.structured.value));
  add(num_str(r.crude.structured.log_value));
  add(r.crude.structured.valid ? "1" : "0");
  add(num_str(r.crude.cap7.value));
  add(r.crude.cap7.valid ? "1" : "0");
  add(num_str(r.crude.cap106.value));
  add(r.crude.cap106.valid ? "1" : "0");
  add(num_str(r.crude.cap138.value));
  add(r.crude.cap138.valid ? "1" : "0");
  add(num_str(r.bonfert));
  add(r.bonfert_valid ? "1" : "0");
  return s;
}

inline nlohmann::json to_json(const BoundsRow& r) {
  return {
      {"K", r.K},
      {"alpha", r.alpha},
      {"beta", r.beta},
      {"bonfert", r.bonfert},
      {"bonfert_valid", r.bonfert_valid},
      {"cap106", to_json(r.crude.cap106)},
      {"cap138", to_json(r.crude.cap138)},
      {"cap7", to_json(r.crude.cap7)},
      {"lambda_hi", r.lambda_hi},
      {"m1_surrogate", to_json(r.m1)},
      {"m3_ball", to_json(r.m3_ball)},
      {"m3_global", to_json(r.m3_global)},
      {"m4_crude", to_json(r.crude.structured)},
      {"m4_sharp", to_json(r.m4_sharp)},
      {"m_bound", r.m_bound},
      {"n", r.n},
  };
}

inline nlohmann::json to_json(const TrendRow& r) {
  return {{"K", r.K}, {"cap7", r.cap7}, {"empirical", r.empirical}, {"m4_sharp", r.m4}};
}

inline nlohmann::json to_json(const SharpnessTrend& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const TrendRow& r : t.rows) rows.push_back(to_json(r));
  return {{"final_small", t.final_small}, {"monotone", t.monotone}, {"rows", rows}};
}

}  // namespace qcdist
