#pragma once

#include <functional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace vqb {

// Choi operator of a linear map with the output tensor factors first and
// the input factor last: C = sum_ij M(|i><j|) (x) |i><j| in the fixed
// computational basis. dims_out is [2,2] for one-to-two qubit maps and [2]
// for qubit channels.
struct ChoiOperator {
  ComplexMatrix m;
  int dim_in = 2;
  std::vector<int> dims_out;

  int out_dim() const {
    int d = 1;
    for (int v : dims_out) d *= v;
    return d;
  }
  int total_dim() const { return out_dim() * dim_in; }
};

ChoiOperator make_choi(ComplexMatrix m, std::vector<int> dims_out, int dim_in = 2);

// Qubit state on the equator of the Bloch sphere:
// rho = (1 + r cos(phi) sx + r sin(phi) sy) / 2.
struct EquatorialState {
  double r = 0.0;
  double phi = 0.0;
  ComplexMatrix density() const;
};

ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
// columns are the basis vectors
ComplexMatrix computational_basis();
ComplexMatrix plus_minus_basis();

// M(rho) reconstructed from the Choi operator (transpose taken in the
// computational basis, where the Choi was built).
ComplexMatrix apply_map(const ChoiOperator& c, const ComplexMatrix& rho);

// Reduced output state Tr_other[M(rho)]; keep is 1 (left factor) or 2.
ComplexMatrix marginal(const ChoiOperator& c, const ComplexMatrix& rho, int keep);

bool is_tp(const ChoiOperator& c, double tol);
bool is_hp(const ChoiOperator& c, double tol);
bool is_cp(const ChoiOperator& c, double tol);

// Dephasing channel in the given orthonormal basis.
ChoiOperator decohere(const ComplexMatrix& basis, double tol = 1e-10);

// Classical copier in the given orthonormal basis:
// |b_i><b_j| -> delta_ij |b_i b_i><b_i b_i|.
ChoiOperator classical_broadcaster(const ComplexMatrix& basis, double tol = 1e-10);

// Build a Choi operator from the action of a map on matrix units.
ChoiOperator choi_from_action(
    int dim_in, std::vector<int> dims_out,
    const std::function<ComplexMatrix(const ComplexMatrix&)>& action);

// JSON interchange: {dim_in, dims_out, re: [[...]], im: [[...]]}.
std::string choi_to_json(const ChoiOperator& c);
ChoiOperator choi_from_json(const std::string& text);

}  // namespace vqb
