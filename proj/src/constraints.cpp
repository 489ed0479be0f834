#include "constraints.hpp"

#include <cmath>

#include "json.hpp"

namespace vqb {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<ComplexMatrix> basis_projectors(const ComplexMatrix& basis) {
  std::vector<ComplexMatrix> proj;
  for (std::size_t i = 0; i < basis.rows; ++i) {
    ComplexMatrix v(basis.rows, 1);
    for (std::size_t k = 0; k < basis.rows; ++k) v(k, 0) = basis(k, i);
    proj.push_back(v * dagger(v));
  }
  return proj;
}

ComplexMatrix dephase(const ComplexMatrix& x, const std::vector<ComplexMatrix>& proj) {
  ComplexMatrix out(x.rows, x.cols);
  for (const ComplexMatrix& p : proj) out = out + p * x * p;
  return out;
}

ComplexMatrix dephase_pair(const ComplexMatrix& x,
                           const std::vector<ComplexMatrix>& proj) {
  ComplexMatrix out(x.rows, x.cols);
  for (const ComplexMatrix& pa : proj)
    for (const ComplexMatrix& pb : proj) {
      const ComplexMatrix pp = kron(pa, pb);
      out = out + pp * x * pp;
    }
  return out;
}

}  // namespace

FamilyParams apply_classic(const FamilyParams& p) {
  FamilyParams out = p;
  out.c3 = cxd(1.0, 0.0) - p.c2;
  out.c5 = p.c4 - cxd(0.5, 0.0);
  out.c6 = cxd(2.0, 0.0) - p.c1 - 4.0 * p.c4;
  return out;
}

FamilyParams free_to_full(const ConstrainedParams& q) {
  FamilyParams p;
  p.c1 = cxd(q.c1, 0.0);
  p.c2 = cxd(0.5, q.t);
  p.c4 = cxd(q.c4, 0.0);
  return apply_classic(p);
}

ConstrainedParams full_to_free(const FamilyParams& p, double tol) {
  if (std::abs(p.c1.imag()) > tol || std::abs(p.c4.imag()) > tol ||
      std::abs(p.c5.imag()) > tol || std::abs(p.c6.imag()) > tol ||
      std::abs(p.c3 - std::conj(p.c2)) > tol) {
    throw Error(ErrorCode::constraint_violation,
                "full_to_free: parameters violate Hermiticity preservation");
  }
  if (!classic_identities_hold(p, tol)) {
    throw Error(ErrorCode::constraint_violation,
                "full_to_free: parameters violate the classical-consistency "
                "identities");
  }
  return ConstrainedParams{p.c1.real(), p.c4.real(), p.c2.imag()};
}

bool classic_identities_hold(const FamilyParams& p, double tol) {
  return std::abs(p.c3 - (cxd(1.0, 0.0) - p.c2)) <= tol &&
         std::abs(p.c5 - (p.c4 - cxd(0.5, 0.0))) <= tol &&
         std::abs(p.c6 - (cxd(2.0, 0.0) - p.c1 - 4.0 * p.c4)) <= tol;
}

bool verify_classic(const ChoiOperator& c, double tol) {
  const ComplexMatrix basis = plus_minus_basis();
  const std::vector<ComplexMatrix> proj = basis_projectors(basis);
  std::vector<ComplexMatrix> vecs;
  for (std::size_t i = 0; i < 2; ++i) {
    ComplexMatrix v(2, 1);
    v(0, 0) = basis(0, i);
    v(1, 0) = basis(1, i);
    vecs.push_back(v);
  }
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const ComplexMatrix unit = vecs[i] * dagger(vecs[j]);
      const ComplexMatrix lhs = dephase_pair(apply_map(c, dephase(unit, proj)), proj);
      ComplexMatrix rhs(4, 4);
      if (i == j) {
        const ComplexMatrix vv = kron(vecs[i], vecs[i]);
        rhs = vv * dagger(vv);
      }
      if (max_abs_diff(lhs, rhs) > tol) return false;
    }
  return true;
}

std::vector<EquatorialState> equatorial_grid(int n_radii, int n_angles) {
  if (n_radii < 1 || n_angles < 1) {
    throw Error(ErrorCode::invalid_argument, "equatorial_grid: empty grid");
  }
  std::vector<EquatorialState> grid;
  grid.reserve(static_cast<std::size_t>(n_radii) * n_angles);
  for (int i = 0; i < n_radii; ++i) {
    // includes the center r=0 and the boundary r=1
    const double r = (n_radii == 1) ? 1.0 : static_cast<double>(i) / (n_radii - 1);
    for (int k = 0; k < n_angles; ++k) {
      const double phi = 2.0 * kPi * k / n_angles;
      grid.push_back(EquatorialState{r, phi});
    }
  }
  return grid;
}

BroadcastReport verify_broadcast(const ChoiOperator& c,
                                 const std::vector<EquatorialState>& grid,
                                 double tol) {
  BroadcastReport report;
  for (const EquatorialState& s : grid) {
    const ComplexMatrix rho = s.density();
    for (int keep = 1; keep <= 2; ++keep) {
      const double dev = trace_norm(marginal(c, rho, keep) - rho);
      if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.argmax_state = s;
        report.argmax_output = keep;
      }
    }
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

double broadcast_deviation(const ChoiOperator& c, const ComplexMatrix& rho) {
  double dev = 0.0;
  for (int keep = 1; keep <= 2; ++keep)
    dev = std::max(dev, trace_norm(marginal(c, rho, keep) - rho));
  return dev;
}

std::string broadcast_report_to_json(const BroadcastReport& r) {
  nlohmann::json j;
  j["max_deviation"] = r.max_deviation;
  j["argmax_state"] = {{"r", r.argmax_state.r},
                       {"phi", r.argmax_state.phi},
                       {"output", r.argmax_output}};
  j["pass"] = r.pass;
  return j.dump();
}

}  // namespace vqb
