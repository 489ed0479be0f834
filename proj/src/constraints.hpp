#pragma once

#include <vector>

#include "twirl.hpp"

namespace vqb {

// Free coordinates of the family after imposing classical consistency and
// Hermiticity preservation: c1 and c4 real, t the imaginary part of c2.
// The remaining coefficients are induced:
//   c2 = 1/2 + i t,  c3 = conj(c2),  c5 = c4 - 1/2,  c6 = 2 - c1 - 4 c4.
struct ConstrainedParams {
  double c1 = 0.0;
  double c4 = 0.0;
  double t = 0.0;
};

// Overwrite c3, c5, c6 with the values forced by classical consistency in
// the |+>/|-> basis, keeping c1, c2, c4 as given.
FamilyParams apply_classic(const FamilyParams& p);

FamilyParams free_to_full(const ConstrainedParams& q);
ConstrainedParams full_to_free(const FamilyParams& p, double tol = 1e-10);

// Checks (D (x) D) o M o D = classical copier on the four |+>/|-> matrix
// units; complete by linearity.
bool verify_classic(const ChoiOperator& c, double tol = 1e-10);

// The three induced-coefficient identities, checked directly on params.
bool classic_identities_hold(const FamilyParams& p, double tol = 1e-12);

struct BroadcastReport {
  double max_deviation = 0.0;
  EquatorialState argmax_state;
  int argmax_output = 1;
  bool pass = false;
};

std::vector<EquatorialState> equatorial_grid(int n_radii, int n_angles);

// Worst trace-norm deviation of either output marginal from the input over
// the given equatorial states.
BroadcastReport verify_broadcast(const ChoiOperator& c,
                                 const std::vector<EquatorialState>& grid,
                                 double tol = 1e-12);

// Marginal deviation for one arbitrary (not necessarily equatorial) state;
// used to show which inputs sit outside the broadcasting guarantee.
double broadcast_deviation(const ChoiOperator& c, const ComplexMatrix& rho);

std::string broadcast_report_to_json(const BroadcastReport& r);

}  // namespace vqb
