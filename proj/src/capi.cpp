#include "vqb.h"

#include <cstring>
#include <string>

#include "channels.hpp"
#include "rng.hpp"
#include "sampling.hpp"

struct vqb_choi {
  vqb::ChoiOperator v;
};

struct vqb_split {
  vqb::Decomposition v;
};

namespace {

thread_local std::string g_last_error;

vqb_status to_status(vqb::ErrorCode code) {
  switch (code) {
    case vqb::ErrorCode::invalid_argument:
      return VQB_ERR_INVALID_ARG;
    case vqb::ErrorCode::dimension_mismatch:
      return VQB_ERR_DIMENSION;
    case vqb::ErrorCode::not_hermitian:
      return VQB_ERR_NOT_HERMITIAN;
    case vqb::ErrorCode::constraint_violation:
      return VQB_ERR_CONSTRAINT;
    case vqb::ErrorCode::parse_error:
      return VQB_ERR_PARSE;
    case vqb::ErrorCode::not_converged:
      return VQB_ERR_NOT_CONVERGED;
  }
  return VQB_ERR_INTERNAL;
}

template <typename Fn>
vqb_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return VQB_OK;
  } catch (const vqb::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VQB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return VQB_ERR_INTERNAL;
  }
}

vqb_status require_args(bool ok) {
  if (!ok) {
    g_last_error = "null or invalid argument";
    return VQB_ERR_INVALID_ARG;
  }
  return VQB_OK;
}

vqb::ComplexMatrix matrix_from_arrays(const double* re, const double* im,
                                      std::size_t n) {
  vqb::ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = vqb::cxd(re[i * n + j], im ? im[i * n + j] : 0.0);
  vqb::require_finite(m, "matrix argument");
  return m;
}

void matrix_to_arrays(const vqb::ComplexMatrix& m, double* re, double* im) {
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      re[i * m.cols + j] = m(i, j).real();
      if (im) im[i * m.cols + j] = m(i, j).imag();
    }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

vqb_status emit_choi(vqb::ChoiOperator v, vqb_choi** out) {
  *out = new vqb_choi{std::move(v)};
  return VQB_OK;
}

}  // namespace

extern "C" {

const char* vqb_status_name(vqb_status status) {
  switch (status) {
    case VQB_OK:
      return "ok";
    case VQB_ERR_INVALID_ARG:
      return "invalid argument";
    case VQB_ERR_DIMENSION:
      return "dimension mismatch";
    case VQB_ERR_NOT_HERMITIAN:
      return "not Hermitian";
    case VQB_ERR_CONSTRAINT:
      return "constraint violation";
    case VQB_ERR_PARSE:
      return "parse error";
    case VQB_ERR_NOT_CONVERGED:
      return "did not converge";
    case VQB_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* vqb_last_error(void) { return g_last_error.c_str(); }

const char* vqb_version(void) { return "1.0.0"; }

void vqb_choi_free(vqb_choi* c) { delete c; }
void vqb_split_free(vqb_split* s) { delete s; }
void vqb_string_free(char* s) { delete[] s; }

vqb_status vqb_choi_family(const double c_re[6], const double c_im[6],
                           vqb_choi** out) {
  if (vqb_status s = require_args(c_re && out)) return s;
  return guarded([&] {
    vqb::FamilyParams p;
    vqb::cxd* fields[6] = {&p.c1, &p.c2, &p.c3, &p.c4, &p.c5, &p.c6};
    for (int i = 0; i < 6; ++i)
      *fields[i] = vqb::cxd(c_re[i], c_im ? c_im[i] : 0.0);
    emit_choi(vqb::family_to_choi(p), out);
  });
}

vqb_status vqb_choi_constrained(double c1, double c4, double t, vqb_choi** out) {
  if (vqb_status s = require_args(out != nullptr)) return s;
  return guarded([&] {
    emit_choi(vqb::family_to_choi(vqb::free_to_full(vqb::ConstrainedParams{c1, c4, t})),
              out);
  });
}

vqb_status vqb_choi_optimal_virtual_broadcaster(vqb_choi** out) {
  if (vqb_status s = require_args(out != nullptr)) return s;
  return guarded([&] { emit_choi(vqb::optimal_virtual_broadcaster(), out); });
}

vqb_status vqb_choi_phase_covariant_cloner(vqb_choi** out) {
  if (vqb_status s = require_args(out != nullptr)) return s;
  return guarded([&] { emit_choi(vqb::phase_covariant_cloner(), out); });
}

vqb_status vqb_choi_canonical_broadcaster(vqb_choi** out) {
  if (vqb_status s = require_args(out != nullptr)) return s;
  return guarded([&] { emit_choi(vqb::canonical_broadcaster(), out); });
}

vqb_status vqb_choi_universal_cloner(vqb_choi** out) {
  if (vqb_status s = require_args(out != nullptr)) return s;
  return guarded([&] { emit_choi(vqb::universal_cloner(), out); });
}

vqb_status vqb_choi_classical_broadcaster(const double basis_re[4],
                                          const double basis_im[4],
                                          vqb_choi** out) {
  if (vqb_status s = require_args(basis_re && out)) return s;
  return guarded([&] {
    emit_choi(vqb::classical_broadcaster(matrix_from_arrays(basis_re, basis_im, 2)),
              out);
  });
}

vqb_status vqb_choi_random_hermitian(uint64_t seed, vqb_choi** out) {
  if (vqb_status s = require_args(out != nullptr)) return s;
  return guarded([&] {
    vqb::SequentialRng rng(seed);
    vqb::ComplexMatrix m(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = i; j < 8; ++j) {
        if (i == j) {
          m(i, j) = rng.uniform(-1.0, 1.0);
        } else {
          m(i, j) = vqb::cxd(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
          m(j, i) = std::conj(m(i, j));
        }
      }
    emit_choi(vqb::make_choi(std::move(m), {2, 2}), out);
  });
}

vqb_status vqb_choi_random_cptp(uint64_t seed, vqb_choi** out) {
  if (vqb_status s = require_args(out != nullptr)) return s;
  return guarded([&] { emit_choi(vqb::random_cptp_choi(seed), out); });
}

vqb_status vqb_choi_mix(const vqb_choi* a, const vqb_choi* b, double w,
                        vqb_choi** out) {
  if (vqb_status s = require_args(a && b && out)) return s;
  return guarded([&] {
    if (a->v.dim_in != b->v.dim_in || a->v.dims_out != b->v.dims_out) {
      throw vqb::Error(vqb::ErrorCode::dimension_mismatch,
                       "vqb_choi_mix: operand dimensions differ");
    }
    emit_choi(vqb::make_choi((1.0 - w) * a->v.m + w * b->v.m, a->v.dims_out,
                             a->v.dim_in),
              out);
  });
}

vqb_status vqb_choi_from_json(const char* text, vqb_choi** out) {
  if (vqb_status s = require_args(text && out)) return s;
  return guarded([&] { emit_choi(vqb::choi_from_json(text), out); });
}

vqb_status vqb_choi_to_json(const vqb_choi* c, char** out) {
  if (vqb_status s = require_args(c && out)) return s;
  return guarded([&] { *out = copy_string(vqb::choi_to_json(c->v)); });
}

vqb_status vqb_choi_dims(const vqb_choi* c, int* dim_in, int* n_out,
                         int dims_out[8]) {
  if (vqb_status s = require_args(c != nullptr)) return s;
  if (dim_in) *dim_in = c->v.dim_in;
  if (n_out) *n_out = static_cast<int>(c->v.dims_out.size());
  if (dims_out) {
    for (std::size_t i = 0; i < c->v.dims_out.size() && i < 8; ++i)
      dims_out[i] = c->v.dims_out[i];
  }
  return VQB_OK;
}

vqb_status vqb_choi_entry(const vqb_choi* c, int row, int col, double* re,
                          double* im) {
  if (vqb_status s = require_args(c && re && im)) return s;
  const int n = c->v.total_dim();
  if (row < 0 || col < 0 || row >= n || col >= n) {
    g_last_error = "entry index out of range";
    return VQB_ERR_DIMENSION;
  }
  const vqb::cxd z = c->v.m(row, col);
  *re = z.real();
  *im = z.imag();
  return VQB_OK;
}

vqb_status vqb_choi_is_tp(const vqb_choi* c, double tol, int* out) {
  if (vqb_status s = require_args(c && out)) return s;
  return guarded([&] { *out = vqb::is_tp(c->v, tol) ? 1 : 0; });
}

vqb_status vqb_choi_is_hp(const vqb_choi* c, double tol, int* out) {
  if (vqb_status s = require_args(c && out)) return s;
  return guarded([&] { *out = vqb::is_hp(c->v, tol) ? 1 : 0; });
}

vqb_status vqb_choi_is_cp(const vqb_choi* c, double tol, int* out) {
  if (vqb_status s = require_args(c && out)) return s;
  return guarded([&] { *out = vqb::is_cp(c->v, tol) ? 1 : 0; });
}

vqb_status vqb_choi_trace_norm(const vqb_choi* c, double* out) {
  if (vqb_status s = require_args(c && out)) return s;
  return guarded([&] { *out = vqb::trace_norm(c->v.m); });
}

vqb_status vqb_choi_twirl(const vqb_choi* c, vqb_twirl_kind kind, vqb_choi** out) {
  if (vqb_status s = require_args(c && out)) return s;
  return guarded([&] {
    switch (kind) {
      case VQB_TWIRL_PHASE:
        emit_choi(vqb::phase_twirl(c->v), out);
        return;
      case VQB_TWIRL_SWAP:
        emit_choi(vqb::swap_twirl(c->v), out);
        return;
      case VQB_TWIRL_FLIP:
        emit_choi(vqb::flip_twirl(c->v), out);
        return;
      case VQB_TWIRL_CLIFFORD:
        emit_choi(vqb::clifford_twirl(c->v), out);
        return;
    }
    throw vqb::Error(vqb::ErrorCode::invalid_argument, "unknown twirl kind");
  });
}

vqb_status vqb_choi_extract_params(const vqb_choi* c, double tol, double c_re[6],
                                   double c_im[6], double* residual) {
  if (vqb_status s = require_args(c && c_re)) return s;
  return guarded([&] {
    double resid = 0.0;
    const vqb::FamilyParams p = vqb::extract_family_params(c->v, tol, &resid);
    const vqb::cxd vals[6] = {p.c1, p.c2, p.c3, p.c4, p.c5, p.c6};
    for (int i = 0; i < 6; ++i) {
      c_re[i] = vals[i].real();
      if (c_im) c_im[i] = vals[i].imag();
    }
    if (residual) *residual = resid;
  });
}

vqb_status vqb_choi_apply(const vqb_choi* c, const double rho_re[4],
                          const double rho_im[4], double* out_re, double* out_im) {
  if (vqb_status s = require_args(c && rho_re && out_re)) return s;
  return guarded([&] {
    const vqb::ComplexMatrix rho = matrix_from_arrays(rho_re, rho_im, 2);
    matrix_to_arrays(vqb::apply_map(c->v, rho), out_re, out_im);
  });
}

vqb_status vqb_choi_marginal(const vqb_choi* c, const double rho_re[4],
                             const double rho_im[4], int keep, double out_re[4],
                             double out_im[4]) {
  if (vqb_status s = require_args(c && rho_re && out_re)) return s;
  return guarded([&] {
    const vqb::ComplexMatrix rho = matrix_from_arrays(rho_re, rho_im, 2);
    matrix_to_arrays(vqb::marginal(c->v, rho, keep), out_re, out_im);
  });
}

vqb_status vqb_choi_verify_classic(const vqb_choi* c, double tol, int* out) {
  if (vqb_status s = require_args(c && out)) return s;
  return guarded([&] { *out = vqb::verify_classic(c->v, tol) ? 1 : 0; });
}

vqb_status vqb_choi_verify_broadcast(const vqb_choi* c, int n_radii, int n_angles,
                                     double tol, char** json_out) {
  if (vqb_status s = require_args(c && json_out)) return s;
  return guarded([&] {
    const vqb::BroadcastReport report =
        vqb::verify_broadcast(c->v, vqb::equatorial_grid(n_radii, n_angles), tol);
    *json_out = copy_string(vqb::broadcast_report_to_json(report));
  });
}

vqb_status vqb_choi_broadcast_deviation_random(const vqb_choi* c, int n_states,
                                               uint64_t seed, double* out) {
  if (vqb_status s = require_args(c && out && n_states > 0)) return s;
  return guarded([&] {
    *out = vqb::broadcast_deviation_random(c->v, n_states, seed);
  });
}

vqb_status vqb_choi_fidelity_scan(const vqb_choi* c, int n_points, int haar,
                                  uint64_t seed, double* mean, double* spread) {
  if (vqb_status s = require_args(c && mean && spread && n_points > 0)) return s;
  return guarded([&] {
    const vqb::FidelityScan f = haar
                                    ? vqb::haar_fidelity_scan(c->v, n_points, seed)
                                    : vqb::equatorial_fidelity_scan(c->v, n_points);
    *mean = f.mean;
    *spread = f.spread;
  });
}

vqb_status vqb_minimize_trace_norm(int starts, uint64_t seed, int grid_points,
                                   vqb_minimize_result* out) {
  if (vqb_status s = require_args(out && starts > 0)) return s;
  return guarded([&] {
    vqb::MinimizeConfig cfg;
    cfg.starts = starts;
    cfg.seed = seed;
    cfg.grid_points = grid_points;
    const vqb::MinimizeResult r = vqb::minimize_trace_norm(cfg);
    out->value = r.value;
    out->c1 = r.argmin.c1;
    out->c4 = r.argmin.c4;
    out->t = r.argmin.t;
    out->grid_min_value = r.grid.min_value;
    out->grid_argmin[0] = r.grid.argmin.c1;
    out->grid_argmin[1] = r.grid.argmin.c4;
    out->grid_argmin[2] = r.grid.argmin.t;
    out->grid_consistent = r.grid.consistent ? 1 : 0;
    out->restarts_used = r.restarts_used;
  });
}

vqb_status vqb_split_pos_neg(const vqb_choi* c, vqb_split** out) {
  if (vqb_status s = require_args(c && out)) return s;
  return guarded([&] { *out = new vqb_split{vqb::pos_neg_split(c->v)}; });
}

vqb_status vqb_split_weights(const vqb_split* s, double* a, double* b) {
  if (vqb_status st = require_args(s != nullptr)) return st;
  if (a) *a = s->v.a;
  if (b) *b = s->v.b;
  return VQB_OK;
}

vqb_status vqb_split_flags(const vqb_split* s, int* tp_exact, int* parts_cptp,
                           double* recon_residual) {
  if (vqb_status st = require_args(s != nullptr)) return st;
  if (tp_exact) *tp_exact = s->v.tp_exact ? 1 : 0;
  if (parts_cptp) *parts_cptp = s->v.parts_cptp ? 1 : 0;
  if (recon_residual) *recon_residual = s->v.recon_residual;
  return VQB_OK;
}

vqb_status vqb_split_part(const vqb_split* s, int positive, vqb_choi** out) {
  if (vqb_status st = require_args(s && out)) return st;
  return guarded([&] { emit_choi(positive ? s->v.e_plus : s->v.e_minus, out); });
}

vqb_status vqb_base_norm_bounds(const vqb_choi* c, double* lower, double* upper,
                                int* certified) {
  if (vqb_status s = require_args(c && lower && upper)) return s;
  return guarded([&] {
    const vqb::BaseNormBounds b = vqb::base_norm_bounds(c->v);
    *lower = b.lower;
    *upper = b.upper;
    if (certified) *certified = b.certified ? 1 : 0;
  });
}

vqb_status vqb_diamond_distance(const vqb_choi* a, const vqb_choi* b, int starts,
                                uint64_t seed, double tol,
                                vqb_distance_result* out) {
  if (vqb_status s = require_args(a && b && out && starts > 0)) return s;
  return guarded([&] {
    vqb::DiamondConfig cfg;
    cfg.starts = starts;
    cfg.seed = seed;
    cfg.tol = tol;
    const vqb::DiamondResult r = vqb::diamond_distance(a->v, b->v, cfg);
    out->value = r.value;
    out->lower_cert = r.lower_cert;
    out->upper_cert = r.upper_cert;
    out->certified = r.certified ? 1 : 0;
  });
}

vqb_status vqb_cloner_local_optimality(int samples, int starts, uint64_t seed,
                                       double tol,
                                       vqb_local_optimality_report* out) {
  if (vqb_status s = require_args(out && samples > 0 && starts > 0)) return s;
  return guarded([&] {
    vqb::LocalOptimalityConfig cfg;
    cfg.samples = samples;
    cfg.starts = starts;
    cfg.seed = seed;
    cfg.tol = tol;
    const vqb::LocalOptimalityReport r = vqb::cloner_local_optimality(cfg);
    out->min_distance = r.min_distance;
    out->max_distance = r.max_distance;
    out->pass = r.pass ? 1 : 0;
  });
}

vqb_status vqb_hoeffding_copies(double epsilon, double delta, double c_range,
                                long long* out) {
  if (vqb_status s = require_args(out != nullptr)) return s;
  return guarded([&] { *out = vqb::hoeffding_copies(epsilon, delta, c_range); });
}

vqb_status vqb_simulate_virtual(const vqb_split* s, double r, double phi,
                                const double o1_re[4], const double o1_im[4],
                                const double o2_re[4], const double o2_im[4],
                                long long shots, uint64_t seed,
                                vqb_simulate_result* out) {
  if (vqb_status st = require_args(s && o1_re && o2_re && out)) return st;
  return guarded([&] {
    const vqb::Observable o1(matrix_from_arrays(o1_re, o1_im, 2));
    const vqb::Observable o2(matrix_from_arrays(o2_re, o2_im, 2));
    const vqb::VirtualEstimate est = vqb::simulate_virtual(
        s->v, vqb::EquatorialState{r, phi}, o1, o2, shots, seed);
    out->est1 = est.est1;
    out->est2 = est.est2;
    out->plus_fraction = est.plus_fraction;
  });
}

vqb_status vqb_simulate_direct(double r, double phi, const double o_re[4],
                               const double o_im[4], long long shots,
                               uint64_t seed, double* out) {
  if (vqb_status st = require_args(o_re && out)) return st;
  return guarded([&] {
    const vqb::Observable o(matrix_from_arrays(o_re, o_im, 2));
    *out = vqb::simulate_direct(vqb::EquatorialState{r, phi}, o, shots, seed);
  });
}

vqb_status vqb_sample_cost_report(double a, double b, double eps1, double delta1,
                                  double eps2, double delta2, double c_range,
                                  vqb_cost_report* out) {
  if (vqb_status st = require_args(out != nullptr)) return st;
  return guarded([&] {
    const vqb::SampleCostReport r = vqb::sample_cost_report(
        vqb::ShotPlan{eps1, delta1, eps2, delta2, c_range}, a, b);
    out->n1 = r.n1;
    out->n2 = r.n2;
    out->n_q = r.n_q;
    out->virtual_copies = r.virtual_copies;
    out->direct_copies = r.direct_copies;
    out->overhead = r.overhead;
    out->ratio = r.ratio;
    out->sample_efficient = r.sample_efficient ? 1 : 0;
  });
}

vqb_status vqb_empirical_failure_rate(const vqb_split* s, double r, double phi,
                                      const double o_re[4], const double o_im[4],
                                      double epsilon, long long shots,
                                      int repetitions, uint64_t seed,
                                      double* per_rep_errors,
                                      vqb_failure_result* out) {
  if (vqb_status st = require_args(o_re && out)) return st;
  return guarded([&] {
    vqb::FailureScenario scenario{
        s != nullptr,
        s ? s->v : vqb::Decomposition{},
        vqb::EquatorialState{r, phi},
        vqb::Observable(matrix_from_arrays(o_re, o_im, 2)),
        epsilon,
        shots};
    const vqb::FailureReport report =
        vqb::empirical_failure_rate(scenario, repetitions, seed);
    out->failure_rate = report.failure_rate;
    out->mean_estimate = report.mean_estimate;
    out->exact_value = report.exact_value;
    if (per_rep_errors) {
      for (std::size_t i = 0; i < report.errors.size(); ++i)
        per_rep_errors[i] = report.errors[i];
    }
  });
}

}  // extern "C"
