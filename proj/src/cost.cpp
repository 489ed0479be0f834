#include "cost.hpp"

#include <algorithm>
#include <cmath>

#include "optim.hpp"
#include "rng.hpp"

namespace vqb {

double objective(const ConstrainedParams& q) {
  const ChoiOperator c = family_to_choi(free_to_full(q));
  double s = 0.0;
  for (double v : hermitian_eigenvalues(c.m, 1e-8)) s += std::abs(v);
  return s;
}

namespace {

ConstrainedParams vec_to_params(const std::vector<double>& x) {
  return ConstrainedParams{x[0], x[1], x[2]};
}

}  // namespace

MinimizeResult minimize_trace_norm(const MinimizeConfig& cfg) {
  const ObjectiveFn f = [](const std::vector<double>& x) {
    return objective(vec_to_params(x));
  };

  NelderMeadOptions nm;
  nm.diameter_tol = cfg.tol;
  nm.max_iter = cfg.nm_max_iter;

  SequentialRng rng(cfg.seed);
  MinimizeResult res;
  bool have_best = false;
  std::vector<double> best_x;
  for (int s = 0; s < cfg.starts; ++s) {
    const std::vector<double> x0{rng.uniform(cfg.c1_lo, cfg.c1_hi),
                                 rng.uniform(cfg.c4_lo, cfg.c4_hi),
                                 rng.uniform(cfg.t_lo, cfg.t_hi)};
    OptimResult local = nelder_mead(f, x0, nm);
    local = pattern_polish(f, local.x, 1e-3, 1e-11);
    if (!have_best || local.value < res.value ||
        (local.value == res.value && local.x < best_x)) {
      have_best = true;
      res.value = local.value;
      best_x = local.x;
      res.argmin = vec_to_params(local.x);
    }
  }
  res.restarts_used = cfg.starts;

  if (cfg.grid_points > 1) {
    const int n = cfg.grid_points;
    double grid_min = 0.0;
    ConstrainedParams grid_arg;
    bool first = true;
    for (int i = 0; i < n; ++i) {
      const double c1 = cfg.c1_lo + (cfg.c1_hi - cfg.c1_lo) * i / (n - 1);
      for (int j = 0; j < n; ++j) {
        const double c4 = cfg.c4_lo + (cfg.c4_hi - cfg.c4_lo) * j / (n - 1);
        for (int k = 0; k < n; ++k) {
          const double t = cfg.t_lo + (cfg.t_hi - cfg.t_lo) * k / (n - 1);
          const double v = objective(ConstrainedParams{c1, c4, t});
          if (first || v < grid_min) {
            first = false;
            grid_min = v;
            grid_arg = ConstrainedParams{c1, c4, t};
          }
        }
      }
    }
    res.grid.min_value = grid_min;
    res.grid.argmin = grid_arg;
    res.grid.consistent = grid_min >= res.value - 1e-6;
  }
  return res;
}

Decomposition pos_neg_split(const ChoiOperator& c, double tol) {
  if (!is_hermitian(c.m, tol)) {
    throw Error(ErrorCode::not_hermitian,
                "pos_neg_split: Choi operator is not Hermitian");
  }
  const EigDecomposition eig = hermitian_eig(c.m, tol);
  const std::size_t n = c.m.rows;
  ComplexMatrix pos(n, n), neg(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix v(n, 1);
    for (std::size_t i = 0; i < n; ++i) v(i, 0) = eig.vectors(i, k);
    const ComplexMatrix vv = v * dagger(v);
    if (eig.values[k] > -tol) {
      pos = pos + eig.values[k] * vv;
    } else {
      neg = neg + (-eig.values[k]) * vv;
    }
  }

  Decomposition d;
  d.a = trace(pos).real() / c.dim_in;
  d.b = trace(neg).real() / c.dim_in;
  d.support_overlap = max_abs(pos * neg);

  const double scale = std::max(1.0, max_abs(c.m));
  if (d.a > tol) {
    d.e_plus = make_choi((1.0 / d.a) * pos, c.dims_out, c.dim_in);
  } else {
    d.a = 0.0;
    d.e_plus = make_choi(zeros(n, n), c.dims_out, c.dim_in);
  }
  if (d.b > tol) {
    d.e_minus = make_choi((1.0 / d.b) * neg, c.dims_out, c.dim_in);
  } else {
    d.b = 0.0;
    d.e_minus = make_choi(zeros(n, n), c.dims_out, c.dim_in);
  }

  std::vector<std::size_t> dims, traced;
  for (std::size_t s = 0; s < c.dims_out.size(); ++s) {
    dims.push_back(static_cast<std::size_t>(c.dims_out[s]));
    traced.push_back(s);
  }
  dims.push_back(static_cast<std::size_t>(c.dim_in));
  const ComplexMatrix eye = identity(static_cast<std::size_t>(c.dim_in));
  const double tp_pos = max_abs_diff(partial_trace(pos, dims, traced), d.a * eye);
  const double tp_neg = max_abs_diff(partial_trace(neg, dims, traced), d.b * eye);
  d.tp_exact = tp_pos <= tol * scale && tp_neg <= tol * scale;

  const bool plus_ok = d.a == 0.0 || (is_cp(d.e_plus, tol) && is_tp(d.e_plus, tol));
  const bool minus_ok = d.b == 0.0 || (is_cp(d.e_minus, tol) && is_tp(d.e_minus, tol));
  d.parts_cptp = plus_ok && minus_ok;

  d.recon_residual =
      max_abs_diff(d.a * d.e_plus.m - d.b * d.e_minus.m, c.m);
  return d;
}

namespace {

double max_eigenvalue(const ComplexMatrix& m) {
  const std::vector<double> ev = hermitian_eigenvalues(m, 1e-8);
  return ev.empty() ? 0.0 : ev.front();
}

ComplexMatrix trace_out_outputs(const ChoiOperator& c, const ComplexMatrix& part) {
  std::vector<std::size_t> dims, traced;
  for (std::size_t s = 0; s < c.dims_out.size(); ++s) {
    dims.push_back(static_cast<std::size_t>(c.dims_out[s]));
    traced.push_back(s);
  }
  dims.push_back(static_cast<std::size_t>(c.dim_in));
  return partial_trace(part, dims, traced);
}

}  // namespace

BaseNormBounds base_norm_bounds(const ChoiOperator& c, double cert_tol) {
  if (!is_hermitian(c.m, 1e-10)) {
    throw Error(ErrorCode::not_hermitian,
                "base_norm_bounds: Choi operator is not Hermitian");
  }
  BaseNormBounds out;
  out.lower = trace_norm(c.m) / c.dim_in;
  const Decomposition d = pos_neg_split(c);
  if (d.tp_exact) {
    out.upper = d.a + d.b;
  } else {
    // rescale each part until its output trace fits under the identity
    const double ap = max_eigenvalue(trace_out_outputs(c, d.a * d.e_plus.m));
    const double bp = max_eigenvalue(trace_out_outputs(c, d.b * d.e_minus.m));
    out.upper = ap + bp;
  }
  out.certified = out.upper - out.lower <= cert_tol;
  return out;
}

namespace {

// TP forces c6 = 1 - c1 - 2 c4 - 2 c5, leaving five real coordinates for a
// Hermitian family member used as the negative branch.
FamilyParams tp_family_member(const std::vector<double>& x) {
  FamilyParams p;
  p.c1 = cxd(x[0], 0.0);
  p.c2 = cxd(x[1], x[2]);
  p.c3 = std::conj(p.c2);
  p.c4 = cxd(x[3], 0.0);
  p.c5 = cxd(x[4], 0.0);
  p.c6 = cxd(1.0 - x[0] - 2.0 * x[3] - 2.0 * x[4], 0.0);
  return p;
}

double min_eigenvalue(const ComplexMatrix& m) {
  const std::vector<double> ev = hermitian_eigenvalues(m, 1e-8);
  return ev.empty() ? 0.0 : ev.back();
}

// Smallest b >= 0 with C + b F positive semidefinite; monotone in b because
// F is, so bisection applies. Returns -1 when no b below the cap works.
double minimal_weight(const ComplexMatrix& c, const ComplexMatrix& f) {
  const double slack = 1e-12;
  if (min_eigenvalue(c) >= -slack) return 0.0;
  double hi = 1.0;
  const double cap = 1e4;
  while (min_eigenvalue(c + hi * f) < -slack) {
    hi *= 2.0;
    if (hi > cap) return -1.0;
  }
  double lo = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (min_eigenvalue(c + mid * f) < -slack) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

HeuristicSearchResult heuristic_decomposition_search(
    const ChoiOperator& c, const HeuristicSearchConfig& cfg) {
  if (!is_hermitian(c.m, 1e-10) || !is_tp(c, 1e-10)) {
    throw Error(ErrorCode::constraint_violation,
                "heuristic_decomposition_search: need a Hermitian TP Choi");
  }

  const ObjectiveFn score = [&](const std::vector<double>& x) {
    const ChoiOperator f = family_to_choi(tp_family_member(x));
    const double neg = min_eigenvalue(f.m);
    if (neg < -1e-12) return 1e3 * (1.0 - neg);  // outside the CPTP set
    const double b = minimal_weight(c.m, f.m);
    if (b < 0.0) return 1e6;
    return 1.0 + 2.0 * b;  // a = 1 + b for trace-preserving input
  };

  SequentialRng rng(cfg.seed);
  NelderMeadOptions nm;
  nm.max_iter = cfg.nm_max_iter;
  nm.diameter_tol = 1e-9;

  HeuristicSearchResult best;
  std::vector<std::vector<double>> starts;
  // spectral split of the source as the first candidate, if usable
  const Decomposition d = pos_neg_split(c);
  if (d.b > 0.0 && d.parts_cptp) {
    const FamilyParams p = extract_family_params(d.e_minus, 1e-6);
    starts.push_back({p.c1.real(), p.c2.real(), p.c2.imag(), p.c4.real(),
                      p.c5.real()});
  }
  for (int s = static_cast<int>(starts.size()); s < cfg.starts; ++s) {
    starts.push_back({rng.uniform(0.0, 1.0), rng.uniform(-0.5, 0.5),
                      rng.uniform(-0.5, 0.5), rng.uniform(0.0, 0.5),
                      rng.uniform(-0.25, 0.25)});
  }

  for (const std::vector<double>& x0 : starts) {
    OptimResult local = nelder_mead(score, x0, nm);
    local = pattern_polish(score, local.x, 1e-3, 1e-9);
    if (local.value >= 1e3) continue;
    if (!best.valid || local.value < best.a_plus_b) {
      best.valid = true;
      best.a_plus_b = local.value;
      best.b = 0.5 * (local.value - 1.0);
      best.negative_part = tp_family_member(local.x);
    }
  }
  return best;
}

}  // namespace vqb
