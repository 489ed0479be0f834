// Acceptance suite: runs each headline requirement at its stated tolerance
// and prints one pass/fail line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "channels.hpp"
#include "fixtures.hpp"
#include "sampling.hpp"

using namespace vqb;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& name,
                   const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2d [%s]: %s (%.2fs%s%s)\n", number, name.c_str(),
              ok ? "PASS" : "FAIL", secs, detail.empty() ? "" : "; ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

ConstrainedParams random_triple(SequentialRng& rng) {
  return ConstrainedParams{rng.uniform(-2, 2), rng.uniform(-1, 2),
                           rng.uniform(-2, 2)};
}

char buffer[256];

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  std::snprintf(buffer, sizeof(buffer), f, a, b, c);
  return buffer;
}

}  // namespace

int main() {
  const std::uint64_t seed = 7;

  run_criterion(1, "family derivation", [&](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_residual = 0.0, worst_round_trip = 0.0;
    SequentialRng rng(seed);
    for (int k = 0; k < 50; ++k) {
      const ChoiOperator c =
          make_choi(vqb_test::random_hermitian(rng, 8), {2, 2});
      const ChoiOperator t = flip_twirl(swap_twirl(phase_twirl(c)));
      double residual = 1.0;
      const FamilyParams p = extract_family_params(t, 1e-9, &residual);
      worst_residual = std::max(worst_residual, residual);
      worst_round_trip =
          std::max(worst_round_trip, max_abs_diff(family_to_choi(p).m, t.m));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    detail = fmt("residual %.2e, round trip %.2e", worst_residual,
                 worst_round_trip);
    return worst_residual <= 1e-12 && worst_round_trip <= 1e-12 && secs < 1.0;
  });

  run_criterion(2, "classical consistency", [&](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    SequentialRng rng(seed + 1);
    for (int k = 0; k < 100; ++k) {
      const ConstrainedParams q = random_triple(rng);
      const FamilyParams p = free_to_full(q);
      if (!classic_identities_hold(p, 1e-14)) return false;
      if (!verify_classic(family_to_choi(p), 1e-10)) return false;
      // breaking any one induced coefficient must break the check
      for (int which = 0; which < 3; ++which) {
        FamilyParams broken = p;
        if (which == 0) broken.c3 += cxd(1e-3, 0);
        if (which == 1) broken.c5 += cxd(1e-3, 0);
        if (which == 2) broken.c6 += cxd(1e-3, 0);
        if (verify_classic(family_to_choi(broken), 1e-10)) return false;
      }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    detail = fmt("100 members, %.2fs", secs);
    return secs < 1.0;
  });

  run_criterion(3, "broadcast and trace preservation", [&](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    SequentialRng rng(seed + 2);
    const std::vector<EquatorialState> grid = equatorial_grid(10, 10);
    double worst_marginal = 0.0, worst_tp = 0.0;
    for (int k = 0; k < 100; ++k) {
      const ChoiOperator c = family_to_choi(free_to_full(random_triple(rng)));
      worst_marginal =
          std::max(worst_marginal, verify_broadcast(c, grid, 1e-12).max_deviation);
      const ComplexMatrix red = partial_trace(c.m, {2, 2, 2}, {0, 1});
      worst_tp = std::max(worst_tp, max_abs_diff(red, identity(2)));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    detail = fmt("marginal %.2e, trace %.2e", worst_marginal, worst_tp);
    return worst_marginal <= 1e-12 && worst_tp <= 1e-12 && secs < 5.0;
  });

  run_criterion(4, "trace-norm minimization", [&](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    MinimizeConfig cfg;
    cfg.seed = seed;
    const MinimizeResult res = minimize_trace_norm(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    detail = fmt("value %.9f, grid min %.6f", res.value, res.grid.min_value);
    // the grid node nearest the optimum, given the 41-point axes
    const bool grid_at_nearest = std::abs(res.grid.argmin.c1 - 0.3) <= 1e-9 &&
                                 std::abs(res.grid.argmin.c4 - 0.425) <= 1e-9 &&
                                 std::abs(res.grid.argmin.t) <= 1e-9;
    return std::abs(res.value - 10.0 / 3.0) <= 1e-7 &&
           std::abs(res.argmin.c1 - 1.0 / 3.0) <= 1e-5 &&
           std::abs(res.argmin.c4 - 5.0 / 12.0) <= 1e-5 &&
           std::abs(res.argmin.t) <= 1e-5 && res.grid.consistent &&
           grid_at_nearest && secs < 60.0;
  });

  run_criterion(5, "two-part decomposition", [&](std::string& detail) {
    const Decomposition d = pos_neg_split(optimal_virtual_broadcaster());
    const double plus_err =
        max_abs_diff(d.e_plus.m, vqb_test::positive_part_reference());
    const double minus_err =
        max_abs_diff(d.e_minus.m, vqb_test::negative_part_reference());
    const bool parts_ok = is_cp(d.e_plus, 1e-10) && is_tp(d.e_plus, 1e-10) &&
                          is_cp(d.e_minus, 1e-10) && is_tp(d.e_minus, 1e-10);
    const BaseNormBounds bounds = base_norm_bounds(optimal_virtual_broadcaster());
    detail = fmt("parts %.2e/%.2e, cost %.12f", plus_err, minus_err, bounds.upper);
    return plus_err <= 1e-10 && minus_err <= 1e-10 && parts_ok &&
           std::abs(d.a - 4.0 / 3.0) <= 1e-12 &&
           std::abs(d.b - 1.0 / 3.0) <= 1e-12 &&
           std::abs(d.a + d.b - 5.0 / 3.0) <= 1e-12 &&
           bounds.upper - bounds.lower <= 1e-9 &&
           std::abs(bounds.lower - 5.0 / 3.0) <= 1e-9 && bounds.certified;
  });

  run_criterion(6, "cloner identity and fidelity", [&](std::string& detail) {
    const Decomposition d = pos_neg_split(optimal_virtual_broadcaster());
    const double diff = max_abs_diff(d.e_plus.m, phase_covariant_cloner().m);
    const FidelityScan scan = equatorial_fidelity_scan(phase_covariant_cloner(), 36);
    detail = fmt("match %.2e, fidelity %.9f, spread %.2e", diff, scan.mean,
                 scan.spread);
    return diff <= 1e-12 && scan.spread <= 1e-10;
  });

  run_criterion(7, "diamond distances", [&](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    DiamondConfig cfg;
    cfg.seed = seed;
    const DiamondResult to_cloner = diamond_distance(
        optimal_virtual_broadcaster(), phase_covariant_cloner(), cfg);
    const DiamondResult baseline =
        diamond_distance(canonical_broadcaster(), universal_cloner(), cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    detail = fmt("to cloner %.9f, baseline %.9f", to_cloner.value, baseline.value);
    return std::abs(to_cloner.lower_cert - 2.0 / 3.0) <= 1e-9 &&
           std::abs(to_cloner.upper_cert - 2.0 / 3.0) <= 1e-9 &&
           std::abs(to_cloner.value - 2.0 / 3.0) <= 1e-6 && to_cloner.certified &&
           std::abs(baseline.value - 1.0) <= 1e-6 && secs < 120.0;
  });

  run_criterion(8, "fully covariant baseline", [&](std::string& detail) {
    const ChoiOperator can = canonical_broadcaster();
    const double dev = broadcast_deviation_random(can, 100, seed);
    const BaseNormBounds bounds = base_norm_bounds(can);
    detail = fmt("deviation %.2e, cost %.12f", dev, bounds.upper);
    return dev <= 1e-12 && bounds.certified &&
           std::abs(bounds.upper - 2.0) <= 1e-9;
  });

  run_criterion(9, "sampling inefficiency ratios", [&](std::string& detail) {
    const Decomposition d = pos_neg_split(optimal_virtual_broadcaster());
    const ShotPlan plan{0.05, 0.05, 0.05, 0.05, 2.0};
    const SampleCostReport ours = sample_cost_report(plan, d.a, d.b);
    const Decomposition base = pos_neg_split(canonical_broadcaster());
    const SampleCostReport theirs = sample_cost_report(plan, base.a, base.b);
    detail = fmt("ratio %.9f, baseline %.9f", ours.ratio, theirs.ratio);
    return std::abs(ours.ratio - 25.0 / 18.0) <= 1e-9 &&
           std::abs(theirs.ratio - 2.0) <= 1e-9 && ours.ratio > 1.0 &&
           theirs.ratio > 1.0 && !ours.sample_efficient && !theirs.sample_efficient;
  });

  run_criterion(10, "estimation statistics", [&](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const Decomposition d = pos_neg_split(optimal_virtual_broadcaster());
    const long long n = hoeffding_copies(0.05, 0.05, 2.0);
    const long long shots = static_cast<long long>(
        std::ceil((d.a + d.b) * (d.a + d.b) * static_cast<double>(n) - 1e-9));
    FailureScenario scenario{true, d, EquatorialState{1.0, 0.0},
                             Observable(sigma_x()), 0.05, shots};
    const FailureReport report = empirical_failure_rate(scenario, 500, seed);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const double slack = 3.0 * std::sqrt(0.05 * 0.95 / 500.0);
    detail = fmt("failure %.4f, mean drift %.5f", report.failure_rate,
                 std::abs(report.mean_estimate - 1.0));
    return shots == 8200 && report.failure_rate <= 0.05 + slack &&
           std::abs(report.mean_estimate - 1.0) <= 0.005 && secs < 300.0;
  });

  run_criterion(11, "cloner local optimality", [&](std::string& detail) {
    LocalOptimalityConfig cfg;
    cfg.samples = 200;
    cfg.seed = seed;
    const LocalOptimalityReport report = cloner_local_optimality(cfg);
    detail = fmt("min distance %.9f over 200 perturbations", report.min_distance);
    return report.pass && report.min_distance >= 2.0 / 3.0 - 1e-6;
  });

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures;
}
