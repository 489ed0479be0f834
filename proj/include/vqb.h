/* vqb - virtual qubit broadcasting toolkit, C interface.
 *
 * The library is a C++ core wrapped behind an opaque-handle C API. All
 * functions return a vqb_status; outputs are written through pointers.
 * Handles must be released with the matching *_free function. Strings
 * returned through char** are heap allocated and released with
 * vqb_string_free. On failure vqb_last_error() describes the most recent
 * error on the calling thread.
 */

#ifndef VQB_H
#define VQB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vqb_status {
  VQB_OK = 0,
  VQB_ERR_INVALID_ARG = 1,
  VQB_ERR_DIMENSION = 2,
  VQB_ERR_NOT_HERMITIAN = 3,
  VQB_ERR_CONSTRAINT = 4,
  VQB_ERR_PARSE = 5,
  VQB_ERR_NOT_CONVERGED = 6,
  VQB_ERR_INTERNAL = 7
} vqb_status;

/* Choi operator of a qubit-input map (output factors first, input last). */
typedef struct vqb_choi vqb_choi;
/* Two-part decomposition C = a E+ - b E- with CPTP parts when possible. */
typedef struct vqb_split vqb_split;

const char* vqb_status_name(vqb_status status);
/* Message for the most recent failure on this thread; empty if none. */
const char* vqb_last_error(void);
const char* vqb_version(void);

void vqb_choi_free(vqb_choi* c);
void vqb_split_free(vqb_split* s);
void vqb_string_free(char* s);

/* ---- construction ------------------------------------------------------ */

/* Family Choi operator from the six coefficients (re/im interleaved per
 * coefficient index). */
vqb_status vqb_choi_family(const double c_re[6], const double c_im[6],
                           vqb_choi** out);
/* Constrained family member from the free coordinates (c1, c4, t). */
vqb_status vqb_choi_constrained(double c1, double c4, double t, vqb_choi** out);
vqb_status vqb_choi_optimal_virtual_broadcaster(vqb_choi** out);
vqb_status vqb_choi_phase_covariant_cloner(vqb_choi** out);
vqb_status vqb_choi_canonical_broadcaster(vqb_choi** out);
vqb_status vqb_choi_universal_cloner(vqb_choi** out);
/* Classical copier in the basis whose columns are given as a 2x2 complex
 * matrix (row-major re/im arrays). */
vqb_status vqb_choi_classical_broadcaster(const double basis_re[4],
                                          const double basis_im[4],
                                          vqb_choi** out);
/* Random 8x8 Hermitian Choi operator (one-to-two qubit map), for twirl
 * experiments. */
vqb_status vqb_choi_random_hermitian(uint64_t seed, vqb_choi** out);
/* Random CPTP one-to-two qubit map. */
vqb_status vqb_choi_random_cptp(uint64_t seed, vqb_choi** out);

/* Convex mixture (1-w) a + w b of two Choi operators with equal dims. */
vqb_status vqb_choi_mix(const vqb_choi* a, const vqb_choi* b, double w,
                        vqb_choi** out);

/* ---- JSON interchange: {dim_in, dims_out, re, im} ---------------------- */

vqb_status vqb_choi_from_json(const char* text, vqb_choi** out);
vqb_status vqb_choi_to_json(const vqb_choi* c, char** out);

/* ---- queries ----------------------------------------------------------- */

vqb_status vqb_choi_dims(const vqb_choi* c, int* dim_in, int* n_out,
                         int dims_out[8]);
vqb_status vqb_choi_entry(const vqb_choi* c, int row, int col, double* re,
                          double* im);
vqb_status vqb_choi_is_tp(const vqb_choi* c, double tol, int* out);
vqb_status vqb_choi_is_hp(const vqb_choi* c, double tol, int* out);
vqb_status vqb_choi_is_cp(const vqb_choi* c, double tol, int* out);
vqb_status vqb_choi_trace_norm(const vqb_choi* c, double* out);

/* ---- symmetrization ---------------------------------------------------- */

typedef enum vqb_twirl_kind {
  VQB_TWIRL_PHASE = 0,
  VQB_TWIRL_SWAP = 1,
  VQB_TWIRL_FLIP = 2,
  VQB_TWIRL_CLIFFORD = 3
} vqb_twirl_kind;

vqb_status vqb_choi_twirl(const vqb_choi* c, vqb_twirl_kind kind, vqb_choi** out);

/* Read the family coefficients from a symmetric Choi operator; fails when
 * the residual against the reconstructed family matrix exceeds tol. */
vqb_status vqb_choi_extract_params(const vqb_choi* c, double tol,
                                   double c_re[6], double c_im[6],
                                   double* residual);

/* ---- map action -------------------------------------------------------- */

/* Apply the map to a 2x2 state (row-major re/im); the output buffers must
 * hold out_dim^2 entries (16 for one-to-two qubit maps). */
vqb_status vqb_choi_apply(const vqb_choi* c, const double rho_re[4],
                          const double rho_im[4], double* out_re,
                          double* out_im);
/* Reduced state on output factor `keep` (1 or 2). */
vqb_status vqb_choi_marginal(const vqb_choi* c, const double rho_re[4],
                             const double rho_im[4], int keep, double out_re[4],
                             double out_im[4]);

/* ---- verification ------------------------------------------------------ */

/* Classical-consistency check in the |+>/|-> basis. */
vqb_status vqb_choi_verify_classic(const vqb_choi* c, double tol, int* out);

/* Broadcast check over an equatorial grid; JSON report
 * {max_deviation, argmax_state, pass}. */
vqb_status vqb_choi_verify_broadcast(const vqb_choi* c, int n_radii,
                                     int n_angles, double tol, char** json_out);

/* Worst marginal deviation over Haar-random pure inputs. */
vqb_status vqb_choi_broadcast_deviation_random(const vqb_choi* c, int n_states,
                                               uint64_t seed, double* out);

/* Single-clone fidelity scan; equatorial grid when haar == 0, Haar-random
 * states otherwise. */
vqb_status vqb_choi_fidelity_scan(const vqb_choi* c, int n_points, int haar,
                                  uint64_t seed, double* mean, double* spread);

/* ---- trace-norm minimization over the constrained family --------------- */

typedef struct vqb_minimize_result {
  double value;
  double c1;
  double c4;
  double t;
  double grid_min_value;
  double grid_argmin[3];
  int grid_consistent;
  int restarts_used;
} vqb_minimize_result;

vqb_status vqb_minimize_trace_norm(int starts, uint64_t seed, int grid_points,
                                   vqb_minimize_result* out);

/* ---- decomposition and simulation cost --------------------------------- */

vqb_status vqb_split_pos_neg(const vqb_choi* c, vqb_split** out);
vqb_status vqb_split_weights(const vqb_split* s, double* a, double* b);
vqb_status vqb_split_flags(const vqb_split* s, int* tp_exact, int* parts_cptp,
                           double* recon_residual);
/* positive != 0 selects E+, otherwise E-. */
vqb_status vqb_split_part(const vqb_split* s, int positive, vqb_choi** out);

vqb_status vqb_base_norm_bounds(const vqb_choi* c, double* lower, double* upper,
                                int* certified);

/* ---- diamond distance --------------------------------------------------- */

typedef struct vqb_distance_result {
  double value;
  double lower_cert;
  double upper_cert;
  int certified;
} vqb_distance_result;

vqb_status vqb_diamond_distance(const vqb_choi* a, const vqb_choi* b, int starts,
                                uint64_t seed, double tol,
                                vqb_distance_result* out);

typedef struct vqb_local_optimality_report {
  double min_distance;
  double max_distance;
  int pass;
} vqb_local_optimality_report;

/* Random CPTP perturbations of the cloner versus the optimal virtual
 * broadcaster. */
vqb_status vqb_cloner_local_optimality(int samples, int starts, uint64_t seed,
                                       double tol,
                                       vqb_local_optimality_report* out);

/* ---- quasiprobability sampling ------------------------------------------ */

vqb_status vqb_hoeffding_copies(double epsilon, double delta, double c_range,
                                long long* out);

typedef struct vqb_simulate_result {
  double est1;
  double est2;
  double plus_fraction;
} vqb_simulate_result;

/* Observables are 2x2 Hermitian matrices, row-major re/im. The input state
 * is equatorial with radius r and angle phi. */
vqb_status vqb_simulate_virtual(const vqb_split* s, double r, double phi,
                                const double o1_re[4], const double o1_im[4],
                                const double o2_re[4], const double o2_im[4],
                                long long shots, uint64_t seed,
                                vqb_simulate_result* out);

vqb_status vqb_simulate_direct(double r, double phi, const double o_re[4],
                               const double o_im[4], long long shots,
                               uint64_t seed, double* out);

typedef struct vqb_cost_report {
  long long n1;
  long long n2;
  long long n_q;
  long long virtual_copies;
  long long direct_copies;
  double overhead;
  double ratio;
  int sample_efficient;
} vqb_cost_report;

vqb_status vqb_sample_cost_report(double a, double b, double eps1, double delta1,
                                  double eps2, double delta2, double c_range,
                                  vqb_cost_report* out);

typedef struct vqb_failure_result {
  double failure_rate;
  double mean_estimate;
  double exact_value;
} vqb_failure_result;

/* Repeated estimation experiment. Pass s == NULL for the direct strategy.
 * When per_rep_errors is non-NULL it must hold `repetitions` doubles and
 * receives |estimate - exact| per repetition. */
vqb_status vqb_empirical_failure_rate(const vqb_split* s, double r, double phi,
                                      const double o_re[4], const double o_im[4],
                                      double epsilon, long long shots,
                                      int repetitions, uint64_t seed,
                                      double* per_rep_errors,
                                      vqb_failure_result* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VQB_H */
