#include "choi.hpp"

#include <cmath>

#include "json.hpp"

namespace vqb {

ChoiOperator make_choi(ComplexMatrix m, std::vector<int> dims_out, int dim_in) {
  if (dim_in <= 0 || dims_out.empty()) {
    throw Error(ErrorCode::invalid_argument, "make_choi: bad dimensions");
  }
  ChoiOperator c{std::move(m), dim_in, std::move(dims_out)};
  if (!c.m.square() || c.m.rows != static_cast<std::size_t>(c.total_dim())) {
    throw Error(ErrorCode::dimension_mismatch,
                "make_choi: matrix dimension does not match dims_out x dim_in");
  }
  require_finite(c.m, "make_choi");
  return c;
}

ComplexMatrix EquatorialState::density() const {
  if (r < 0.0 || r > 1.0) {
    throw Error(ErrorCode::invalid_argument,
                "equatorial state: radius must lie in [0, 1]");
  }
  const cxd off = 0.5 * cxd(r * std::cos(phi), -r * std::sin(phi));
  return mat2(0.5, off, std::conj(off), 0.5);
}

ComplexMatrix sigma_x() { return mat2(0, 1, 1, 0); }
ComplexMatrix sigma_y() { return mat2(0, cxd(0, -1), cxd(0, 1), 0); }
ComplexMatrix sigma_z() { return mat2(1, 0, 0, -1); }

ComplexMatrix computational_basis() { return identity(2); }

ComplexMatrix plus_minus_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  return mat2(s, s, s, -s);
}

ComplexMatrix apply_map(const ChoiOperator& c, const ComplexMatrix& rho) {
  const std::size_t din = static_cast<std::size_t>(c.dim_in);
  if (rho.rows != din || rho.cols != din) {
    throw Error(ErrorCode::dimension_mismatch,
                "apply_map: state dimension does not match dim_in");
  }
  const std::size_t dout = static_cast<std::size_t>(c.out_dim());
  ComplexMatrix out(dout, dout);
  for (std::size_t o = 0; o < dout; ++o)
    for (std::size_t op = 0; op < dout; ++op) {
      cxd acc(0.0, 0.0);
      for (std::size_t i = 0; i < din; ++i)
        for (std::size_t j = 0; j < din; ++j)
          acc += rho(i, j) * c.m(o * din + i, op * din + j);
      out(o, op) = acc;
    }
  return out;
}

ComplexMatrix marginal(const ChoiOperator& c, const ComplexMatrix& rho, int keep) {
  if (c.dims_out.size() != 2) {
    throw Error(ErrorCode::invalid_argument,
                "marginal: Choi operator does not have two output factors");
  }
  if (keep != 1 && keep != 2) {
    throw Error(ErrorCode::invalid_argument, "marginal: keep must be 1 or 2");
  }
  const ComplexMatrix full = apply_map(c, rho);
  const std::vector<std::size_t> dims{static_cast<std::size_t>(c.dims_out[0]),
                                      static_cast<std::size_t>(c.dims_out[1])};
  return partial_trace(full, dims, {keep == 1 ? std::size_t{1} : std::size_t{0}});
}

bool is_tp(const ChoiOperator& c, double tol) {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < c.dims_out.size(); ++s) {
    dims.push_back(static_cast<std::size_t>(c.dims_out[s]));
    traced.push_back(s);
  }
  dims.push_back(static_cast<std::size_t>(c.dim_in));
  const ComplexMatrix red = partial_trace(c.m, dims, traced);
  return max_abs_diff(red, identity(static_cast<std::size_t>(c.dim_in))) <= tol;
}

bool is_hp(const ChoiOperator& c, double tol) { return is_hermitian(c.m, tol); }

bool is_cp(const ChoiOperator& c, double tol) { return is_psd(c.m, tol); }

namespace {

void require_orthonormal(const ComplexMatrix& basis, double tol, const char* what) {
  if (!basis.square()) {
    throw Error(ErrorCode::invalid_argument,
                std::string(what) + ": basis must be square");
  }
  const ComplexMatrix gram = dagger(basis) * basis;
  if (max_abs_diff(gram, identity(basis.rows)) > tol) {
    throw Error(ErrorCode::constraint_violation,
                std::string(what) + ": basis is not orthonormal");
  }
}

ComplexMatrix basis_column(const ComplexMatrix& basis, std::size_t i) {
  ComplexMatrix v(basis.rows, 1);
  for (std::size_t k = 0; k < basis.rows; ++k) v(k, 0) = basis(k, i);
  return v;
}

}  // namespace

ChoiOperator decohere(const ComplexMatrix& basis, double tol) {
  require_orthonormal(basis, tol, "decohere");
  std::vector<ComplexMatrix> proj;
  for (std::size_t i = 0; i < basis.rows; ++i) {
    const ComplexMatrix v = basis_column(basis, i);
    proj.push_back(v * dagger(v));
  }
  return choi_from_action(
      static_cast<int>(basis.rows), {static_cast<int>(basis.rows)},
      [&](const ComplexMatrix& x) {
        ComplexMatrix out(x.rows, x.cols);
        for (const ComplexMatrix& p : proj) out = out + p * x * p;
        return out;
      });
}

ChoiOperator classical_broadcaster(const ComplexMatrix& basis, double tol) {
  require_orthonormal(basis, tol, "classical_broadcaster");
  const std::size_t d = basis.rows;
  std::vector<ComplexMatrix> vecs;
  for (std::size_t i = 0; i < d; ++i) vecs.push_back(basis_column(basis, i));
  return choi_from_action(
      static_cast<int>(d), {static_cast<int>(d), static_cast<int>(d)},
      [&](const ComplexMatrix& x) {
        ComplexMatrix out(d * d, d * d);
        for (std::size_t i = 0; i < d; ++i) {
          const cxd w = (dagger(vecs[i]) * x * vecs[i])(0, 0);
          const ComplexMatrix vv = kron(vecs[i], vecs[i]);
          out = out + w * (vv * dagger(vv));
        }
        return out;
      });
}

ChoiOperator choi_from_action(
    int dim_in, std::vector<int> dims_out,
    const std::function<ComplexMatrix(const ComplexMatrix&)>& action) {
  const std::size_t din = static_cast<std::size_t>(dim_in);
  std::size_t dout = 1;
  for (int v : dims_out) dout *= static_cast<std::size_t>(v);
  ComplexMatrix c(dout * din, dout * din);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t j = 0; j < din; ++j) {
      ComplexMatrix unit(din, din);
      unit(i, j) = 1.0;
      const ComplexMatrix img = action(unit);
      if (img.rows != dout || img.cols != dout) {
        throw Error(ErrorCode::dimension_mismatch,
                    "choi_from_action: action output has wrong dimension");
      }
      for (std::size_t o = 0; o < dout; ++o)
        for (std::size_t op = 0; op < dout; ++op)
          c(o * din + i, op * din + j) += img(o, op);
    }
  return make_choi(std::move(c), std::move(dims_out), dim_in);
}

std::string choi_to_json(const ChoiOperator& c) {
  nlohmann::json j;
  j["dim_in"] = c.dim_in;
  j["dims_out"] = c.dims_out;
  const std::size_t n = c.m.rows;
  std::vector<std::vector<double>> re(n, std::vector<double>(n));
  std::vector<std::vector<double>> im(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      re[i][k] = c.m(i, k).real();
      im[i][k] = c.m(i, k).imag();
    }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

ChoiOperator choi_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("choi_from_json: ") + e.what());
  }
  if (!j.contains("dim_in") || !j.contains("dims_out") || !j.contains("re") ||
      !j.contains("im")) {
    throw Error(ErrorCode::parse_error,
                "choi_from_json: missing dim_in/dims_out/re/im");
  }
  try {
    const int dim_in = j["dim_in"].get<int>();
    const std::vector<int> dims_out = j["dims_out"].get<std::vector<int>>();
    const auto re = j["re"].get<std::vector<std::vector<double>>>();
    const auto im = j["im"].get<std::vector<std::vector<double>>>();
    const std::size_t n = re.size();
    if (im.size() != n) {
      throw Error(ErrorCode::parse_error, "choi_from_json: re/im size mismatch");
    }
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (re[i].size() != n || im[i].size() != n) {
        throw Error(ErrorCode::parse_error, "choi_from_json: ragged rows");
      }
      for (std::size_t k = 0; k < n; ++k) m(i, k) = cxd(re[i][k], im[i][k]);
    }
    return make_choi(std::move(m), dims_out, dim_in);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("choi_from_json: ") + e.what());
  }
}

}  // namespace vqb
