// Command-line front end: bound tables over K-grids, the verification
// checks, empirical Hölder scans for the test maps, and the line-map
// spherical bound.  All output is deterministic for fixed arguments and
// seed; the seed falls back to the QCDIST_SEED environment variable.
//
// Exit codes: 0 success, 1 a check or bound comparison failed, 2 bad usage.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <qcdist/qcdist.hpp>

namespace {

struct GridSpec {
  std::vector<double> values;
};

GridSpec parse_k_grid(const std::string& s) {
  GridSpec g;
  const auto fail = [&](const std::string& why) {
    throw CLI::ValidationError("--k-grid", "'" + s + "': " + why);
  };
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(':', pos);
    parts.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (parts.size() != 4) fail("expected start:stop:points:lin|log");
  double start = 0.0, stop = 0.0;
  long pts = 0;
  try {
    start = std::stod(parts[0]);
    stop = std::stod(parts[1]);
    pts = std::stol(parts[2]);
  } catch (const std::exception&) {
    fail("non-numeric field");
  }
  const std::string kind = parts[3];
  if (kind != "lin" && kind != "log") fail("spacing must be lin or log");
  if (!(start >= 1.0)) fail("K values start at 1");
  if (!(stop >= start)) fail("stop must be >= start");
  if (pts < 1 || pts > 1000000) fail("points must be in [1, 1e6]");
  if (pts == 1) {
    g.values.push_back(start);
    return g;
  }
  if (kind == "lin") {
    for (long i = 0; i < pts; ++i) {
      g.values.push_back(start + (stop - start) * static_cast<double>(i) /
                                     static_cast<double>(pts - 1));
    }
  } else {
    if (!(start > 1.0)) fail("log spacing is in K-1 and needs start > 1");
    const double la = std::log(start - 1.0), lb = std::log(stop - 1.0);
    for (long i = 0; i < pts; ++i) {
      g.values.push_back(
          1.0 + std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(pts - 1)));
    }
  }
  return g;
}

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(',', pos);
    const std::string tok = s.substr(pos, next - pos);
    try {
      std::size_t used = 0;
      const int n = std::stoi(tok, &used);
      if (used != tok.size() || n < 2) throw std::invalid_argument("bad");
      out.push_back(n);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--n", "'" + tok + "' is not a dimension >= 2");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--n", "empty dimension list");
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QCDIST_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "QCDIST_SEED is not an integer: " << env << "\n";
      std::exit(2);
    }
  }
  return 20210927;  // fixed default: runs are reproducible with no arguments
}

void write_out(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    std::exit(2);
  }
  f << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit chordal-metric Hölder bounds for quasiconformal maps"};
  app.require_subcommand(1);

  // ---- bounds ----------------------------------------------------------
  std::optional<double> b_k;
  std::string b_grid, b_dims = "2", b_format = "csv", b_out;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "tabulate the bound constants over K and n");
  bounds_cmd->add_option("--k", b_k, "single distortion K (>= 1)");
  bounds_cmd->add_option("--k-grid", b_grid, "K grid as start:stop:points:lin|log (log in K-1)");
  bounds_cmd->add_option("--n", b_dims, "comma-separated dimensions (default 2)");
  bounds_cmd->add_option("--format", b_format, "csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  bounds_cmd->add_option("--out", b_out, "write to file instead of stdout");

  // ---- verify ----------------------------------------------------------
  std::string v_check, v_out;
  std::uint64_t v_seed = default_seed();
  long v_samples = 10000;
  int v_refine = 30;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the numerical verification checks");
  verify_cmd->add_option("--check", v_check, "run a single named check (default: all)");
  verify_cmd->add_option("--seed", v_seed, "RNG seed (default: QCDIST_SEED or fixed)");
  verify_cmd->add_option("--samples", v_samples, "sample count per check (default 10000)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--refine", v_refine, "pattern-search refinement rounds");
  verify_cmd->add_option("--out", v_out, "write to file instead of stdout");

  // ---- holder ----------------------------------------------------------
  std::string h_map = "stretch:a=0.5,n=2", h_metric = "spherical", h_out, h_region;
  std::optional<double> h_exp;
  std::uint64_t h_seed = default_seed();
  long h_samples = 10000;
  int h_refine = 30;
  CLI::App* holder_cmd =
      app.add_subcommand("holder", "empirical worst-case Hölder quotient for a test map");
  holder_cmd->add_option("--map", h_map,
                         "map spec: stretch:a=..,n=.. | qs:lambda=.. | mobius:ax=..[,ay=..] | "
                         "invconj(..) | compose(..;..)");
  holder_cmd->add_option("--metric", h_metric, "euclidean or spherical (default spherical)")
      ->check(CLI::IsMember({"euclidean", "spherical"}));
  holder_cmd->add_option("--exp", h_exp, "Hölder exponent (default: the map's natural exponent)");
  holder_cmd->add_option("--seed", h_seed, "RNG seed (default: QCDIST_SEED or fixed)");
  holder_cmd->add_option("--samples", h_samples, "pair count (default 10000)")
      ->check(CLI::PositiveNumber);
  holder_cmd->add_option("--refine", h_refine, "pattern-search refinement rounds");
  holder_cmd->add_option("--region", h_region, "ball | sphere | line (default: by metric/map)")
      ->check(CLI::IsMember({"ball", "sphere", "line"}));
  holder_cmd->add_option("--out", h_out, "write to file instead of stdout");

  // ---- qs-bound --------------------------------------------------------
  double q_k = 1.0;
  std::string q_out;
  CLI::App* qs_cmd =
      app.add_subcommand("qs-bound", "chordal Hölder bound for K-quasisymmetric line maps");
  qs_cmd->add_option("--k", q_k, "quasisymmetry constant (>= 1)")->required();
  qs_cmd->add_option("--out", q_out, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (bounds_cmd->parsed()) {
      std::vector<double> ks;
      if (b_k && !b_grid.empty()) {
        std::cerr << "--k and --k-grid are mutually exclusive\n";
        return 2;
      }
      if (b_k) {
        ks.push_back(*b_k);
      } else if (!b_grid.empty()) {
        ks = parse_k_grid(b_grid).values;
      } else {
        std::cerr << "need --k or --k-grid\n";
        return 2;
      }
      const std::vector<int> dims = parse_dims(b_dims);
      std::string out;
      if (b_format == "csv") {
        out = std::string(qcdist::bounds_csv_header()) + "\n";
        for (double K : ks) {
          for (int n : dims) out += qcdist::bounds_csv_line(qcdist::bounds_row(K, n)) + "\n";
        }
      } else {
        nlohmann::json rows = nlohmann::json::array();
        for (double K : ks) {
          for (int n : dims) rows.push_back(qcdist::to_json(qcdist::bounds_row(K, n)));
        }
        out = nlohmann::json{{"rows", rows}}.dump(2) + "\n";
      }
      write_out(b_out, out);
      return 0;
    }

    if (verify_cmd->parsed()) {
      qcdist::SampleConfig cfg;
      cfg.seed = v_seed;
      cfg.count = v_samples;
      cfg.refinement_steps = v_refine;
      std::vector<qcdist::CheckReport> reports;
      if (v_check.empty()) {
        reports = qcdist::run_all_checks(cfg);
      } else {
        if (!qcdist::find_check(v_check)) {
          std::cerr << "unknown check: " << v_check << "\n";
          return 2;
        }
        reports.push_back(qcdist::run_check(v_check, cfg));
      }
      bool all_pass = true;
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        arr.push_back(qcdist::to_json(r));
      }
      nlohmann::json doc{{"all_pass", all_pass},
                         {"checks", arr},
                         {"samples", v_samples},
                         {"seed", v_seed}};
      write_out(v_out, doc.dump(2) + "\n");
      return all_pass ? 0 : 1;
    }

    if (holder_cmd->parsed()) {
      const qcdist::QCTestMap f = qcdist::parse_map_spec(h_map);
      const qcdist::Metric metric =
          h_metric == "euclidean" ? qcdist::Metric::euclidean : qcdist::Metric::spherical;
      double exponent;
      if (h_exp) {
        exponent = *h_exp;
      } else if (f.kind == qcdist::QCTestMap::Kind::piecewise_linear_qs) {
        exponent = qcdist::qs_spherical_bound(f.qc_constant()).exponent;
      } else {
        exponent = qcdist::DistortionParams(f.qc_constant(), std::max(f.dim(), 2)).alpha;
      }
      qcdist::SampleConfig cfg;
      cfg.seed = h_seed;
      cfg.count = h_samples;
      cfg.refinement_steps = h_refine;
      if (h_region == "ball") {
        cfg.region = {qcdist::RegionKind::unit_ball, f.dim(), 1.0};
      } else if (h_region == "sphere") {
        cfg.region = {qcdist::RegionKind::sphere, f.dim(), 1.0};
      } else if (h_region == "line") {
        cfg.region = {qcdist::RegionKind::real_line, 1, 1.0};
      } else if (f.dim() == 1) {
        cfg.region = {qcdist::RegionKind::real_line, 1, 1.0};
      } else if (metric == qcdist::Metric::euclidean) {
        cfg.region = {qcdist::RegionKind::unit_ball, f.dim(), 1.0};
      } else {
        cfg.region = {qcdist::RegionKind::sphere, f.dim(), 1.0};
      }
      const qcdist::HolderReport rep = qcdist::empirical_holder(f, metric, exponent, cfg);
      write_out(h_out, qcdist::to_json(rep).dump(2) + "\n");
      // A proved bound undercut by an observed quotient is a failure.
      if (rep.has_bound && rep.empirical_constant > rep.bound_value * (1.0 + 1e-9)) return 1;
      return 0;
    }

    if (qs_cmd->parsed()) {
      const qcdist::QsBound qb = qcdist::qs_spherical_bound(q_k);
      nlohmann::json doc{{"C", qcdist::to_json(qb.c)},
                         {"K", qb.K},
                         {"L", qb.L},
                         {"exponent", qb.exponent},
                         {"log_r_upper", qb.log_r}};
      write_out(q_out, doc.dump(2) + "\n");
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
