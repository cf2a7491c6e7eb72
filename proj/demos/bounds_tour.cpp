// A small tour: compute the global chordal Hölder constants for a couple of
// distortions, verify one supporting inequality, and compare a bound with
// the empirical worst-case quotient of the radial stretch that attains the
// same distortion.

#include <cstdio>

#include <qcdist/qcdist.hpp>

int main() {
  using namespace qcdist;

  std::printf("%-8s %-4s %-12s %-14s %-14s\n", "K", "n", "alpha", "m4_sharp", "m3_global");
  for (double K : {1.000001, 1.01, 1.5, 2.0}) {
    for (int n : {2, 3}) {
      const DistortionParams p(K, n);
      const LambdaBounds lam = lambda_bounds(n);
      std::printf("%-8g %-4d %-12.8f %-14.6g %-14.6g\n", K, n, p.alpha,
                  m4_sharp(p, lam).value, m3_global(p, lam).value);
    }
  }

  SampleConfig cfg;
  cfg.seed = 7;
  cfg.count = 20000;
  const CheckReport rep = run_check("ineq-1.5c", cfg);
  std::printf("\ncheck %s: %s (worst margin %.3g)\n", rep.name.c_str(),
              rep.pass ? "pass" : "FAIL", rep.worst_margin);

  const DistortionParams p(1.5, 2);
  cfg.region = {RegionKind::sphere, 2, 1.0};
  cfg.refinement_steps = 25;
  const HolderReport h =
      empirical_holder(QCTestMap::radial_stretch(p.alpha, 2), Metric::spherical, p.alpha, cfg);
  std::printf("stretch K=1.5: empirical %.6f vs bound %.6f (%s)\n", h.empirical_constant,
              h.bound_value, h.bound_formula.c_str());
  return rep.pass ? 0 : 1;
}
