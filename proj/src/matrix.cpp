#include "matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vqb {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(op) + ": shape mismatch (" +
                    std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                    " vs " + std::to_string(b.rows) + "x" +
                    std::to_string(b.cols) + ")");
  }
}

void require_square(const ComplexMatrix& m, const char* op) {
  if (!m.square()) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(op) + ": matrix is not square");
  }
}

}  // namespace

ComplexMatrix identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix mat2(cxd a, cxd b, cxd c, cxd d) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "add");
  ComplexMatrix r(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] + b.data[i];
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "sub");
  ComplexMatrix r(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] - b.data[i];
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols != b.rows) {
    throw Error(ErrorCode::dimension_mismatch, "mul: inner dimension mismatch");
  }
  ComplexMatrix r(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const cxd aik = a(i, k);
      if (aik == cxd(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols; ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

ComplexMatrix operator*(cxd s, const ComplexMatrix& a) {
  ComplexMatrix r(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = s * a.data[i];
  return r;
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) {
  return cxd(s, 0.0) * a;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix r(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r(j, i) = std::conj(m(i, j));
  return r;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
  ComplexMatrix r(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r(j, i) = m(i, j);
  return r;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
  ComplexMatrix r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.data.size(); ++i) r.data[i] = std::conj(m.data[i]);
  return r;
}

cxd trace(const ComplexMatrix& m) {
  require_square(m, "trace");
  cxd t(0.0, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) t += m(i, i);
  return t;
}

double max_abs(const ComplexMatrix& m) {
  double v = 0.0;
  for (const cxd& z : m.data) v = std::max(v, std::abs(z));
  return v;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double v = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    v = std::max(v, std::abs(a.data[i] - b.data[i]));
  return v;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const cxd& z : m.data) s += std::norm(z);
  return std::sqrt(s);
}

bool all_finite(const ComplexMatrix& m) {
  for (const cxd& z : m.data)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!all_finite(m)) {
    throw Error(ErrorCode::invalid_argument,
                std::string(what) + ": non-finite entries");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) {
      const cxd aij = a(i, j);
      if (aij == cxd(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows; ++k)
        for (std::size_t l = 0; l < b.cols; ++l)
          r(i * b.rows + k, j * b.cols + l) = aij * b(k, l);
    }
  return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& traced) {
  require_square(m, "partial_trace");
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (total != m.rows) {
    throw Error(ErrorCode::dimension_mismatch,
                "partial_trace: product of dims (" + std::to_string(total) +
                    ") does not match matrix dimension (" +
                    std::to_string(m.rows) + ")");
  }
  std::vector<bool> is_traced(dims.size(), false);
  for (std::size_t t : traced) {
    if (t >= dims.size()) {
      throw Error(ErrorCode::dimension_mismatch,
                  "partial_trace: traced index " + std::to_string(t) +
                      " out of range");
    }
    is_traced[t] = true;
  }

  std::vector<std::size_t> kept, cut;
  for (std::size_t s = 0; s < dims.size(); ++s)
    (is_traced[s] ? cut : kept).push_back(s);

  // strides of each subsystem in the flat index (leftmost = most significant)
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t s = dims.size(); s-- > 1;)
    stride[s - 1] = stride[s] * dims[s];

  std::size_t kept_dim = 1, cut_dim = 1;
  for (std::size_t s : kept) kept_dim *= dims[s];
  for (std::size_t s : cut) cut_dim *= dims[s];

  auto offset = [&](const std::vector<std::size_t>& subs, std::size_t flat) {
    std::size_t off = 0;
    for (std::size_t s = subs.size(); s-- > 0;) {
      off += (flat % dims[subs[s]]) * stride[subs[s]];
      flat /= dims[subs[s]];
    }
    return off;
  };

  ComplexMatrix r(kept_dim, kept_dim);
  for (std::size_t i = 0; i < kept_dim; ++i) {
    const std::size_t ri = offset(kept, i);
    for (std::size_t j = 0; j < kept_dim; ++j) {
      const std::size_t rj = offset(kept, j);
      cxd acc(0.0, 0.0);
      for (std::size_t t = 0; t < cut_dim; ++t) {
        const std::size_t rt = offset(cut, t);
        acc += m(ri + rt, rj + rt);
      }
      r(i, j) = acc;
    }
  }
  return r;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = i; j < m.cols; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  const std::vector<double> ev = hermitian_eigenvalues(m, tol);
  return ev.empty() || ev.back() >= -tol;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One cyclic Jacobi pass over all (p, q) pairs. Each rotation absorbs the
// phase of A(p,q) and then applies the classic real rotation, so the pivot
// is annihilated exactly.
void jacobi_sweep(ComplexMatrix& a, ComplexMatrix* v) {
  const std::size_t n = a.rows;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const cxd apq = a(p, q);
      const double mag = std::abs(apq);
      if (mag == 0.0) continue;
      const cxd phase = apq / mag;  // e^{i arg apq}
      const double app = a(p, p).real();
      const double aqq = a(q, q).real();
      const double tau = (aqq - app) / (2.0 * mag);
      const double t =
          (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;
      // plane rotation J: J(p,p)=c*phase, J(q,p)=s, J(p,q)=-s*phase, J(q,q)=c
      for (std::size_t k = 0; k < n; ++k) {  // A <- A J
        const cxd akp = a(k, p), akq = a(k, q);
        a(k, p) = akp * (c * phase) + akq * s;
        a(k, q) = akp * (-s * phase) + akq * c;
      }
      for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A
        const cxd apk = a(p, k), aqk = a(q, k);
        a(p, k) = std::conj(c * phase) * apk + s * aqk;
        a(q, k) = std::conj(-s * phase) * apk + c * aqk;
      }
      if (v) {
        for (std::size_t k = 0; k < n; ++k) {  // V <- V J
          const cxd vkp = (*v)(k, p), vkq = (*v)(k, q);
          (*v)(k, p) = vkp * (c * phase) + vkq * s;
          (*v)(k, q) = vkp * (-s * phase) + vkq * c;
        }
      }
      a(p, q) = 0.0;
      a(q, p) = 0.0;
      a(p, p) = cxd(a(p, p).real(), 0.0);
      a(q, q) = cxd(a(q, q).real(), 0.0);
    }
  }
}

EigDecomposition jacobi_eig(const ComplexMatrix& m, double tol, bool want_vectors) {
  require_square(m, "hermitian_eig");
  require_finite(m, "hermitian_eig");
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::not_hermitian,
                "hermitian_eig: input is not Hermitian within tolerance");
  }
  const std::size_t n = m.rows;
  // work on the exactly Hermitian average so roundoff asymmetry cannot leak
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  ComplexMatrix v = identity(n);
  const double threshold = 1e-14 * std::max(1.0, frobenius_norm(a));
  const int max_sweeps = 100;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(a) <= threshold) break;
    jacobi_sweep(a, want_vectors ? &v : nullptr);
  }
  if (sweep == max_sweeps && offdiag_norm(a) > threshold) {
    throw Error(ErrorCode::not_converged, "hermitian_eig: Jacobi did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  EigDecomposition out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(order[i], order[i]).real();
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

}  // namespace

EigDecomposition hermitian_eig(const ComplexMatrix& m, double tol) {
  return jacobi_eig(m, tol, true);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
  return jacobi_eig(m, tol, false).values;
}

double trace_norm(const ComplexMatrix& m) {
  require_square(m, "trace_norm");
  const double scale = std::max(1.0, max_abs(m));
  if (is_hermitian(m, 1e-10 * scale)) {
    double s = 0.0;
    for (double v : hermitian_eigenvalues(m, 1e-10 * scale)) s += std::abs(v);
    return s;
  }
  // general case: singular values via the Gram matrix
  const ComplexMatrix gram = dagger(m) * m;
  double s = 0.0;
  for (double v : hermitian_eigenvalues(gram, 1e-8 * scale * scale))
    s += std::sqrt(std::max(0.0, v));
  return s;
}

}  // namespace vqb
