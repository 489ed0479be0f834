#include "sampling.hpp"

#include <cmath>

#include "json.hpp"
#include "rng.hpp"

namespace vqb {

Observable::Observable(const ComplexMatrix& m, double tol) : matrix(m) {
  if (m.rows != 2 || m.cols != 2) {
    throw Error(ErrorCode::dimension_mismatch, "observable: expected 2x2 matrix");
  }
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::not_hermitian, "observable: matrix is not Hermitian");
  }
  const EigDecomposition eig = hermitian_eig(m, tol);
  eigenvalues = eig.values;
  for (std::size_t k = 0; k < 2; ++k) {
    ComplexMatrix v(2, 1);
    v(0, 0) = eig.vectors(0, k);
    v(1, 0) = eig.vectors(1, k);
    projectors.push_back(v * dagger(v));
  }
}

long long hoeffding_copies(double epsilon, double delta, double c_range) {
  if (epsilon <= 0.0 || delta <= 0.0 || c_range <= 0.0) {
    throw Error(ErrorCode::invalid_argument,
                "hoeffding_copies: inputs must be positive");
  }
  if (delta >= 1.0) {
    throw Error(ErrorCode::invalid_argument, "hoeffding_copies: delta must be < 1");
  }
  const double x = c_range * c_range / (2.0 * epsilon * epsilon) *
                   std::log(2.0 / delta);
  // the small slack keeps analytically integer counts from rounding up
  const double n = std::ceil(x - 1e-9);
  return n < 1.0 ? 1 : static_cast<long long>(n);
}

namespace {

struct OutcomeTable {
  // probability of the first (larger) eigenvalue under each branch marginal
  double p_first = 0.0;
  double v_first = 0.0;
  double v_second = 0.0;
};

OutcomeTable outcome_table(const ComplexMatrix& marg, const Observable& o) {
  OutcomeTable t;
  double p0 = (o.projectors[0] * marg)(0, 0).real() +
              (o.projectors[0] * marg)(1, 1).real();
  p0 = std::min(1.0, std::max(0.0, p0));
  // snap near-certain outcomes so they stay deterministic under rounding
  if (p0 > 1.0 - 1e-12) p0 = 1.0;
  if (p0 < 1e-12) p0 = 0.0;
  t.p_first = p0;
  t.v_first = o.eigenvalues[0];
  t.v_second = o.eigenvalues[1];
  return t;
}

void require_certified(const Decomposition& d) {
  if (!d.parts_cptp || d.recon_residual > 1e-8) {
    throw Error(ErrorCode::constraint_violation,
                "simulate_virtual: decomposition is not certified "
                "(parts must be CPTP and reconstruct the map)");
  }
}

}  // namespace

VirtualEstimate simulate_virtual(const Decomposition& d, const EquatorialState& rho,
                                 const Observable& o1, const Observable& o2,
                                 long long shots, std::uint64_t seed) {
  if (shots <= 0) {
    throw Error(ErrorCode::invalid_argument, "simulate_virtual: shots must be > 0");
  }
  require_certified(d);
  const ComplexMatrix state = rho.density();
  const double weight = d.a + d.b;
  const double p_plus = d.a / weight;

  // both observables read the same shot stream through the two output
  // marginals of the sampled branch
  OutcomeTable table1[2], table2[2];
  const ChoiOperator* branches[2] = {&d.e_plus, &d.e_minus};
  for (int g = 0; g < 2; ++g) {
    if (g == 1 && d.b == 0.0) break;
    table1[g] = outcome_table(marginal(*branches[g], state, 1), o1);
    table2[g] = outcome_table(marginal(*branches[g], state, 2), o2);
  }

  double acc1 = 0.0, acc2 = 0.0;
  long long plus_count = 0;
  for (long long shot = 0; shot < shots; ++shot) {
    const std::uint64_t ctr = static_cast<std::uint64_t>(shot);
    const bool plus = counter_u01(seed, ctr, 0) < p_plus;
    const int g = plus ? 0 : 1;
    const double sign = plus ? 1.0 : -1.0;
    plus_count += plus ? 1 : 0;
    const double out1 = counter_u01(seed, ctr, 1) < table1[g].p_first
                            ? table1[g].v_first
                            : table1[g].v_second;
    const double out2 = counter_u01(seed, ctr, 2) < table2[g].p_first
                            ? table2[g].v_first
                            : table2[g].v_second;
    acc1 += sign * out1;
    acc2 += sign * out2;
  }

  VirtualEstimate est;
  est.est1 = weight * acc1 / static_cast<double>(shots);
  est.est2 = weight * acc2 / static_cast<double>(shots);
  est.plus_fraction = static_cast<double>(plus_count) / static_cast<double>(shots);
  return est;
}

double simulate_direct(const EquatorialState& rho, const Observable& o,
                       long long shots, std::uint64_t seed) {
  if (shots <= 0) {
    throw Error(ErrorCode::invalid_argument, "simulate_direct: shots must be > 0");
  }
  const OutcomeTable t = outcome_table(rho.density(), o);
  double acc = 0.0;
  for (long long shot = 0; shot < shots; ++shot) {
    const std::uint64_t ctr = static_cast<std::uint64_t>(shot);
    acc += counter_u01(seed, ctr, 0) < t.p_first ? t.v_first : t.v_second;
  }
  return acc / static_cast<double>(shots);
}

SampleCostReport sample_cost_report(const ShotPlan& plan, double a, double b) {
  SampleCostReport r;
  r.n1 = hoeffding_copies(plan.epsilon1, plan.delta1, plan.c_range);
  r.n2 = hoeffding_copies(plan.epsilon2, plan.delta2, plan.c_range);
  r.n_q = std::max(r.n1, r.n2);
  r.overhead = (a + b) * (a + b);
  r.virtual_copies = static_cast<long long>(
      std::ceil(r.overhead * static_cast<double>(r.n_q) - 1e-9));
  r.direct_copies = r.n1 + r.n2;
  r.ratio = r.overhead * static_cast<double>(r.n_q) /
            static_cast<double>(r.direct_copies);
  r.sample_efficient = r.ratio < 1.0;
  return r;
}

FailureReport empirical_failure_rate(const FailureScenario& scenario,
                                     int repetitions, std::uint64_t seed) {
  if (repetitions < 100) {
    throw Error(ErrorCode::invalid_argument,
                "empirical_failure_rate: need at least 100 repetitions");
  }
  if (scenario.shots <= 0) {
    throw Error(ErrorCode::invalid_argument,
                "empirical_failure_rate: shots must be > 0");
  }
  const ComplexMatrix state = scenario.rho.density();

  FailureReport report;
  if (scenario.virtual_strategy) {
    const Decomposition& d = scenario.decomposition;
    require_certified(d);
    const ComplexMatrix marg = d.a * marginal(d.e_plus, state, 1) -
                               d.b * marginal(d.e_minus, state, 1);
    report.exact_value = trace(scenario.observable.matrix * marg).real();
  } else {
    report.exact_value = trace(scenario.observable.matrix * state).real();
  }

  int failures = 0;
  double mean = 0.0;
  report.errors.reserve(static_cast<std::size_t>(repetitions));
  for (int rep = 0; rep < repetitions; ++rep) {
    const std::uint64_t rep_seed = mix64(seed + 0x9e3779b9ULL * (rep + 1));
    double est;
    if (scenario.virtual_strategy) {
      est = simulate_virtual(scenario.decomposition, scenario.rho,
                             scenario.observable, scenario.observable,
                             scenario.shots, rep_seed)
                .est1;
    } else {
      est = simulate_direct(scenario.rho, scenario.observable, scenario.shots,
                            rep_seed);
    }
    const double err = std::abs(est - report.exact_value);
    report.errors.push_back(err);
    if (err > scenario.epsilon) ++failures;
    mean += est;
  }
  report.failure_rate = static_cast<double>(failures) / repetitions;
  report.mean_estimate = mean / repetitions;
  return report;
}

std::string sample_cost_report_to_json(const SampleCostReport& r) {
  nlohmann::json j;
  j["n1"] = r.n1;
  j["n2"] = r.n2;
  j["n_q"] = r.n_q;
  j["virtual_copies"] = r.virtual_copies;
  j["direct_copies"] = r.direct_copies;
  j["overhead"] = r.overhead;
  j["ratio"] = r.ratio;
  j["sample_efficient"] = r.sample_efficient;
  return j.dump();
}

}  // namespace vqb
