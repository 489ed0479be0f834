#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cost.hpp"

namespace vqb {

// Two-outcome observable with cached spectral data.
struct Observable {
  ComplexMatrix matrix;
  std::vector<double> eigenvalues;       // descending
  std::vector<ComplexMatrix> projectors;

  explicit Observable(const ComplexMatrix& m, double tol = 1e-10);
  double spread() const { return eigenvalues.front() - eigenvalues.back(); }
};

// Accuracy/confidence targets for the two receiving parties. c_range is the
// width of the outcome range entering the tail bound; it is carried
// explicitly instead of being inferred from the observables.
struct ShotPlan {
  double epsilon1 = 0.1;
  double delta1 = 0.05;
  double epsilon2 = 0.1;
  double delta2 = 0.05;
  double c_range = 2.0;
};

// ceil(c^2 / (2 eps^2) ln(2/delta)), the standard sufficient sample count
// for an epsilon-delta tail bound on a bounded mean estimate.
long long hoeffding_copies(double epsilon, double delta, double c_range);

struct VirtualEstimate {
  double est1 = 0.0;
  double est2 = 0.0;
  double plus_fraction = 0.0;  // empirical frequency of the positive branch
};

// Quasiprobability simulation of the decomposed map: per shot pick the
// positive branch with probability a/(a+b), sample a projective outcome of
// each observable from that branch's output marginals, accumulate with the
// branch sign, and rescale the means by a+b.
VirtualEstimate simulate_virtual(const Decomposition& d, const EquatorialState& rho,
                                 const Observable& o1, const Observable& o2,
                                 long long shots, std::uint64_t seed);

// Direct estimation on the input state itself.
double simulate_direct(const EquatorialState& rho, const Observable& o,
                       long long shots, std::uint64_t seed);

struct SampleCostReport {
  long long n1 = 0;
  long long n2 = 0;
  long long n_q = 0;
  long long virtual_copies = 0;
  long long direct_copies = 0;
  double overhead = 0.0;  // (a+b)^2
  double ratio = 0.0;     // (a+b)^2 n_q / (n1 + n2)
  bool sample_efficient = false;
};

// Copy-count comparison between simulating the decomposed map and handing
// copies to the two parties directly.
SampleCostReport sample_cost_report(const ShotPlan& plan, double a, double b);

struct FailureScenario {
  bool virtual_strategy = true;
  Decomposition decomposition;  // used when virtual_strategy
  EquatorialState rho;
  Observable observable;
  double epsilon = 0.05;
  long long shots = 0;
};

struct FailureReport {
  double failure_rate = 0.0;
  double mean_estimate = 0.0;
  double exact_value = 0.0;
  std::vector<double> errors;  // |estimate - exact| per repetition
};

// Repeats the estimation experiment and counts how often the error exceeds
// epsilon; the exact value is computed analytically from the map.
FailureReport empirical_failure_rate(const FailureScenario& scenario,
                                     int repetitions, std::uint64_t seed);

std::string sample_cost_report_to_json(const SampleCostReport& r);

}  // namespace vqb
