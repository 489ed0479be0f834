#pragma once

#include <array>
#include <cstdint>

#include "constraints.hpp"

namespace vqb {

// Choi trace norm over the constrained family.
double objective(const ConstrainedParams& q);

struct MinimizeConfig {
  int starts = 32;
  std::uint64_t seed = 7;
  double tol = 1e-10;
  int nm_max_iter = 400;
  int grid_points = 41;  // per axis; 0 disables the scan
  // search box
  double c1_lo = -2.0, c1_hi = 2.0;
  double c4_lo = -1.0, c4_hi = 2.0;
  double t_lo = -2.0, t_hi = 2.0;
};

struct GridCertificate {
  double min_value = 0.0;
  ConstrainedParams argmin;
  // true when no grid node undercuts the optimizer value by more than 1e-6
  bool consistent = false;
};

struct MinimizeResult {
  double value = 0.0;
  ConstrainedParams argmin;
  GridCertificate grid;
  int restarts_used = 0;
};

// Multistart Nelder-Mead with a deterministic pattern-search polish,
// followed by a coarse grid scan used as desk-scale uniqueness evidence.
MinimizeResult minimize_trace_norm(const MinimizeConfig& cfg = {});

struct Decomposition {
  double a = 0.0;
  double b = 0.0;
  ChoiOperator e_plus;
  ChoiOperator e_minus;
  bool tp_exact = false;     // Tr_out of each raw part proportional to identity
  bool parts_cptp = false;   // both normalized parts pass CP and TP checks
  double recon_residual = 0.0;
  double support_overlap = 0.0;
};

// Spectral split C = a E+ - b E- with orthogonal supports. Eigenvalues in
// (-tol, tol) go to the positive part so the tie-break is deterministic.
Decomposition pos_neg_split(const ChoiOperator& c, double tol = 1e-10);

struct BaseNormBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;
};

// Sandwich bounds on the simulation cost: trace norm over dim_in from
// below, the exhibited two-part decomposition from above. When the raw
// parts are not trace preserving the upper bound falls back to the
// trace-non-increasing rescaling of each part.
BaseNormBounds base_norm_bounds(const ChoiOperator& c, double cert_tol = 1e-9);

struct HeuristicSearchConfig {
  int starts = 12;
  std::uint64_t seed = 7;
  int nm_max_iter = 200;
};

struct HeuristicSearchResult {
  double a_plus_b = 0.0;
  double b = 0.0;
  FamilyParams negative_part;  // coefficients of the CPTP map used as E-
  bool valid = false;
};

// Search for decompositions C = a E+ - b E- with smaller a + b than the
// spectral split, restricting E- to trace-preserving CP members of the
// family (symmetrizing any decomposition lands it there, so nothing is
// lost). Heuristic: reports the best certificate found, never a proof.
HeuristicSearchResult heuristic_decomposition_search(
    const ChoiOperator& c, const HeuristicSearchConfig& cfg = {});

}  // namespace vqb
