#include "twirl.hpp"

#include <cmath>

namespace vqb {

namespace {

constexpr double kPi = 3.14159265358979323846;

ChoiOperator conjugated_average(const ChoiOperator& c,
                                const std::vector<ComplexMatrix>& ws) {
  ComplexMatrix acc(c.m.rows, c.m.cols);
  for (const ComplexMatrix& w : ws) acc = acc + w * c.m * dagger(w);
  acc = (1.0 / static_cast<double>(ws.size())) * acc;
  return make_choi(std::move(acc), c.dims_out, c.dim_in);
}

ComplexMatrix phase_unitary(double phi) {
  return mat2(1.0, 0.0, 0.0, std::polar(1.0, phi));
}

void require_two_qubit_out(const ChoiOperator& c, const char* what) {
  if (c.dim_in != 2 || c.dims_out != std::vector<int>{2, 2}) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": expected a one-to-two qubit Choi operator");
  }
}

ComplexMatrix swap_gate() {
  ComplexMatrix s(4, 4);
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

}  // namespace

ChoiOperator phase_twirl(const ChoiOperator& c, int n_points) {
  require_two_qubit_out(c, "phase_twirl");
  if (n_points < 4) {
    throw Error(ErrorCode::invalid_argument,
                "phase_twirl: need at least 4 sample phases for exactness");
  }
  std::vector<ComplexMatrix> ws;
  ws.reserve(n_points);
  for (int k = 0; k < n_points; ++k) {
    const double phi = 2.0 * kPi * k / n_points;
    const ComplexMatrix u = phase_unitary(phi);
    ws.push_back(kron(kron(u, u), conjugate(u)));
  }
  return conjugated_average(c, ws);
}

ChoiOperator swap_twirl(const ChoiOperator& c) {
  require_two_qubit_out(c, "swap_twirl");
  return conjugated_average(c, {identity(8), kron(swap_gate(), identity(2))});
}

ChoiOperator flip_twirl(const ChoiOperator& c) {
  require_two_qubit_out(c, "flip_twirl");
  const ComplexMatrix f = kron(kron(sigma_x(), sigma_x()), conjugate(sigma_x()));
  return conjugated_average(c, {identity(8), f});
}

const std::vector<ComplexMatrix>& clifford_group() {
  static const std::vector<ComplexMatrix> group = [] {
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix hadamard = mat2(s, s, s, -s);
    const ComplexMatrix phase = mat2(1.0, 0.0, 0.0, cxd(0.0, 1.0));

    // canonical form: make the first entry of significant magnitude
    // positive real, so global phases compare equal
    auto canonicalize = [](ComplexMatrix u) {
      for (const cxd& z : u.data) {
        if (std::abs(z) > 1e-8) {
          const cxd corr = std::conj(z) / std::abs(z);
          return corr * u;
        }
      }
      return u;
    };

    std::vector<ComplexMatrix> found{canonicalize(identity(2))};
    auto known = [&](const ComplexMatrix& u) {
      for (const ComplexMatrix& v : found)
        if (max_abs_diff(u, v) < 1e-8) return true;
      return false;
    };

    std::size_t frontier = 0;
    while (frontier < found.size()) {
      const ComplexMatrix u = found[frontier++];
      for (const ComplexMatrix* g : {&hadamard, &phase}) {
        const ComplexMatrix w = canonicalize((*g) * u);
        if (!known(w)) found.push_back(w);
      }
    }
    if (found.size() != 24) {
      throw Error(ErrorCode::not_converged,
                  "clifford_group: enumeration produced " +
                      std::to_string(found.size()) + " elements, expected 24");
    }
    return found;
  }();
  return group;
}

ChoiOperator clifford_twirl(const ChoiOperator& c) {
  require_two_qubit_out(c, "clifford_twirl");
  std::vector<ComplexMatrix> ws;
  ws.reserve(24);
  for (const ComplexMatrix& u : clifford_group())
    ws.push_back(kron(kron(u, u), conjugate(u)));
  return conjugated_average(c, ws);
}

// Basis index is 4j + 2k + l for |j k l>, j and k the output qubits, l the
// input. The family couples |000>/|111> to the swap-symmetric combination on
// the opposite weight sector (coefficients c2, c3), carries c4 on the
// symmetric and c5 on the antisymmetric |01>+-|10> output blocks, and c6 on
// the two extreme-weight singlets |001>, |110>.
ChoiOperator family_to_choi(const FamilyParams& p) {
  ComplexMatrix m(8, 8);
  m(0, 0) = p.c1;
  m(7, 7) = p.c1;
  m(1, 1) = p.c6;
  m(6, 6) = p.c6;
  m(0, 3) = p.c2;
  m(0, 5) = p.c2;
  m(7, 2) = p.c2;
  m(7, 4) = p.c2;
  m(3, 0) = p.c3;
  m(5, 0) = p.c3;
  m(2, 7) = p.c3;
  m(4, 7) = p.c3;
  const cxd diag = p.c4 + p.c5;
  const cxd cross = p.c4 - p.c5;
  m(2, 2) = diag;
  m(3, 3) = diag;
  m(4, 4) = diag;
  m(5, 5) = diag;
  m(2, 4) = cross;
  m(4, 2) = cross;
  m(3, 5) = cross;
  m(5, 3) = cross;
  return make_choi(std::move(m), {2, 2});
}

FamilyParams extract_family_params(const ChoiOperator& c, double tol,
                                   double* residual_out) {
  require_two_qubit_out(c, "extract_family_params");
  FamilyParams p;
  p.c1 = c.m(0, 0);
  p.c2 = c.m(0, 3);
  p.c3 = c.m(3, 0);
  p.c6 = c.m(1, 1);
  p.c4 = 0.5 * (c.m(2, 2) + c.m(2, 4));
  p.c5 = 0.5 * (c.m(2, 2) - c.m(2, 4));

  const ChoiOperator rebuilt = family_to_choi(p);
  double residual = 0.0;
  std::size_t worst_i = 0, worst_j = 0;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const double d = std::abs(rebuilt.m(i, j) - c.m(i, j));
      if (d > residual) {
        residual = d;
        worst_i = i;
        worst_j = j;
      }
    }
  if (residual_out) *residual_out = residual;
  if (residual > tol) {
    throw Error(ErrorCode::constraint_violation,
                "extract_family_params: entry (" + std::to_string(worst_i) +
                    ", " + std::to_string(worst_j) + ") lies outside the family "
                    "span by " + std::to_string(residual));
  }
  return p;
}

}  // namespace vqb
