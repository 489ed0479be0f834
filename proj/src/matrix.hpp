#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vqb {

using cxd = std::complex<double>;

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  not_hermitian,
  constraint_violation,
  parse_error,
  not_converged,
};

// All fallible core operations throw Error. The C API translates
// ErrorCode values into vqb_status codes at the library boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Dense complex matrix in row-major order. Matrices are values: every
// operation returns a fresh matrix, nothing mutates its inputs.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cxd> data;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), data(r * c, cxd(0.0, 0.0)) {}

  cxd& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const cxd& operator()(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }
  bool square() const { return rows == cols; }
};

struct EigDecomposition {
  std::vector<double> values;  // sorted descending
  ComplexMatrix vectors;       // eigenvectors as columns, same order
};

ComplexMatrix identity(std::size_t n);
ComplexMatrix zeros(std::size_t rows, std::size_t cols);
// 2x2 initializer, entries row-major.
ComplexMatrix mat2(cxd a, cxd b, cxd c, cxd d);

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cxd s, const ComplexMatrix& a);
ComplexMatrix operator*(double s, const ComplexMatrix& a);

ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);
cxd trace(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);
void require_finite(const ComplexMatrix& m, const char* what);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out the subsystems listed in `traced` (0-based positions into
// `dims`, leftmost factor first). Preserves the total trace.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& traced);

bool is_hermitian(const ComplexMatrix& m, double tol);
// PSD <=> Hermitian within tol and min eigenvalue >= -tol.
bool is_psd(const ComplexMatrix& m, double tol);

// Cyclic Jacobi diagonalization for Hermitian matrices. Suited for the
// small dense operators used here (dimension <= 16); deterministic and
// dependency-free. Throws if m is not Hermitian within tol.
EigDecomposition hermitian_eig(const ComplexMatrix& m, double tol = 1e-10);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m,
                                          double tol = 1e-10);

// Sum of |eigenvalues| for Hermitian input, sum of singular values otherwise.
double trace_norm(const ComplexMatrix& m);

}  // namespace vqb
