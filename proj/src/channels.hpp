#pragma once

#include <cstdint>

#include "cost.hpp"

namespace vqb {

// Trace-norm minimizer of the constrained family; the unique symmetric
// virtual broadcasting map of least simulation cost.
ChoiOperator optimal_virtual_broadcaster();

// CPTP normalization of the positive part of the optimal virtual
// broadcaster, written out explicitly (two equal-weight rank-one Kraus
// terms with symmetric support).
ChoiOperator phase_covariant_cloner();

// The unique fully unitary-covariant, swap-invariant, classically
// consistent broadcasting map, built by the twirl pipeline and
// cross-checked against the anticommutator closed form
// B(rho) = (rho (x) 1) S / 2 + S (rho (x) 1) / 2.
ChoiOperator canonical_broadcaster();

// Normalized positive part of the canonical broadcaster.
ChoiOperator universal_cloner();

struct DiamondConfig {
  int starts = 64;
  std::uint64_t seed = 7;
  double tol = 1e-9;
  int nm_max_iter = 300;
};

struct DiamondResult {
  double value = 0.0;       // best stabilized trace norm found by the search
  double lower_cert = 0.0;  // maximally entangled witness
  double upper_cert = 0.0;  // two-part decomposition of the difference
  bool certified = false;   // bracket collapsed within tol
};

// Diamond distance between two maps with equal dimensions. The search runs
// over pure states on input (x) reference via a six-coordinate chart; the
// first start is the maximally entangled state, so the reported value never
// falls below the Choi witness.
DiamondResult diamond_distance(const ChoiOperator& a, const ChoiOperator& b,
                               const DiamondConfig& cfg = {});

// Random CPTP Choi operator from a Ginibre isometry with an
// eight-dimensional environment.
ChoiOperator random_cptp_choi(std::uint64_t seed);

struct LocalOptimalityConfig {
  int samples = 200;
  std::uint64_t seed = 7;
  int starts = 4;
  double tol = 1e-6;
};

struct LocalOptimalityReport {
  double min_distance = 0.0;
  double max_distance = 0.0;
  bool pass = false;
};

// Mixes the cloner with random CPTP maps at weights 0.01 / 0.05 / 0.1 and
// checks that no perturbation moves closer to the optimal virtual
// broadcaster than the cloner itself.
LocalOptimalityReport cloner_local_optimality(const LocalOptimalityConfig& cfg = {});

struct FidelityScan {
  double mean = 0.0;
  double spread = 0.0;  // max - min over the scanned states
};

// Single-clone fidelity <psi| Tr_2 E(psi) |psi> over an equatorial grid of
// pure states (r = 1).
FidelityScan equatorial_fidelity_scan(const ChoiOperator& c, int n_points);

// Same fidelity over Haar-random pure qubit states.
FidelityScan haar_fidelity_scan(const ChoiOperator& c, int n_points,
                                std::uint64_t seed);

// Worst marginal deviation over Haar-random (not just equatorial) inputs.
double broadcast_deviation_random(const ChoiOperator& c, int n_states,
                                  std::uint64_t seed);

}  // namespace vqb
