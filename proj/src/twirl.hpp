#pragma once

#include <vector>

#include "choi.hpp"

namespace vqb {

// Coefficients of the symmetric one-to-two qubit Choi family. The matrix
// placement is derived from the joint block structure of the diagonal-phase,
// swap and bit-flip actions; see family_to_choi.
struct FamilyParams {
  cxd c1{0.0, 0.0};
  cxd c2{0.0, 0.0};
  cxd c3{0.0, 0.0};
  cxd c4{0.0, 0.0};
  cxd c5{0.0, 0.0};
  cxd c6{0.0, 0.0};
};

// Group average over diagonal-phase conjugations. Conjugating phases enter
// matrix elements with integer weight differences bounded by 3 in absolute
// value, so averaging over the four fourth roots of unity already projects
// exactly onto the invariant span; any n_points >= 4 gives the same result
// (cross-checked numerically against a 360-point average in the tests).
ChoiOperator phase_twirl(const ChoiOperator& c, int n_points = 4);

// Average with the conjugation that swaps the two output factors.
ChoiOperator swap_twirl(const ChoiOperator& c);

// Average with the bit-flip conjugation on all three factors.
ChoiOperator flip_twirl(const ChoiOperator& c);

// Average over the 24 single-qubit Clifford conjugations (U, U, conj U).
// The Clifford group is a unitary 3-design, so this equals the continuous
// unitary average for these degree-(3,3) expressions.
ChoiOperator clifford_twirl(const ChoiOperator& c);

// The 24 canonical Clifford representatives, generated by the Hadamard and
// phase gates modulo global phase.
const std::vector<ComplexMatrix>& clifford_group();

// Build the 8x8 family Choi operator from its six coefficients.
ChoiOperator family_to_choi(const FamilyParams& p);

// Read the six coefficients back from designated entries and verify every
// other entry against the reconstruction; throws naming the first offending
// entry when the input lies outside the family span by more than tol.
FamilyParams extract_family_params(const ChoiOperator& c, double tol,
                                   double* residual_out = nullptr);

}  // namespace vqb
