/* burnstab: three-variable land/fire/prescribed-burning model.
 *
 * C API for the shared library. All entry points return bs_status; outputs
 * are written through pointers. Heavyweight results (trajectories, ensembles)
 * are returned as opaque handles with explicit free functions. Strings
 * returned through char** are heap-allocated and must be released with
 * bs_string_free. bs_last_error() returns a thread-local detail message for
 * the most recent failing call on this thread.
 */
#ifndef BURNSTAB_H
#define BURNSTAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bs_status {
  BS_OK = 0,
  BS_ERR_INVALID_ARGUMENT = 1,
  BS_ERR_INVALID_PARAMS = 2,
  BS_ERR_NOT_REACTIVE_REGIME = 3,
  BS_ERR_DEGENERATE_SPECTRUM = 4,
  BS_ERR_STEP_SIZE_UNDERFLOW = 5,
  BS_ERR_NONFINITE_STATE = 6,
  BS_ERR_NO_ROOT_IN_INTERVAL = 7,
  BS_ERR_BRANCH_CONDITION_UNMET = 8,
  BS_ERR_GRID_TOO_LARGE = 9,
  BS_ERR_PARSE = 10,
  BS_ERR_IO = 11,
  BS_ERR_INTERNAL = 12
} bs_status;

const char* bs_status_name(bs_status status);
const char* bs_last_error(void);
void bs_string_free(char* s);
const char* bs_version(void);

/* ---- parameters and model basics ---- */

typedef struct bs_params {
  double alpha;
  double beta;
  double gamma;
  double zeta;
  double eta;
  double theta; /* nonzero; > 0 reactive, < 0 proactive */
  double f0;
} bs_params;

bs_status bs_params_validate(const bs_params* p);
bs_status bs_params_from_json(const char* text, bs_params* out);
bs_status bs_params_from_json_file(const char* path, bs_params* out);
bs_status bs_params_to_json(const bs_params* p, char** out_json);

/* out = (da/dt, df/dt, db/dt) at state (a, f, b). */
bs_status bs_vector_field(const bs_params* p, const double state[3],
                          double out[3]);

/* out = (a*, f*, b*). */
bs_status bs_equilibrium(const bs_params* p, double out[3]);

typedef struct bs_feasibility {
  int area_bounded;
  int burn_nonnegative;
  int burn_within_land;
  double margins[3];
} bs_feasibility;

bs_status bs_feasibility_check(const bs_params* p, bs_feasibility* out);

/* ---- stability classification ---- */

typedef enum bs_regime {
  BS_REGIME_REACTIVE_UNSTABLE_THREE_REAL = 0,
  BS_REGIME_REACTIVE_UNSTABLE_COMPLEX_PAIR = 1,
  BS_REGIME_PROACTIVE_STABLE_THREE_REAL = 2,
  BS_REGIME_PROACTIVE_STABLE_COMPLEX_PAIR = 3,
  BS_REGIME_PROACTIVE_UNSTABLE_FOCUS = 4,
  BS_REGIME_HOPF_CRITICAL = 5
} bs_regime;

const char* bs_regime_name(bs_regime regime);

typedef struct bs_verdict {
  bs_regime regime;
  double condition_lhs;
  double condition_rhs;
  /* eigenvalues of the linearization at the equilibrium */
  double eig_re[3];
  double eig_im[3];
} bs_verdict;

bs_status bs_classify(const bs_params* p, bs_verdict* out);
bs_status bs_classify_json(const bs_params* p, char** out_json);

/* Proactive strength at the stability boundary; ignores p->theta's value. */
bs_status bs_critical_vartheta(const bs_params* p, double* out);

/* ---- feedback design (reactive regime, theta > 0) ---- */

typedef struct bs_feedback_design {
  double lambda1;
  double sigma;
  double tau;
  double eig_re[4];
  double eig_im[4];
} bs_feedback_design;

bs_status bs_design_feedback(const bs_params* p, double margin,
                             bs_feedback_design* out);
bs_status bs_design_feedback_json(const bs_params* p, double margin,
                                  char** out_json);

/* ---- time integration ---- */

typedef enum bs_method { BS_METHOD_RK4 = 0, BS_METHOD_RK45 = 1 } bs_method;

typedef struct bs_integrator_config {
  bs_method method;
  double step;     /* rk4 */
  double rel_tol;  /* rk45 */
  double abs_tol;
  double max_step;
  double t_end;
  int terminate_on_event;
} bs_integrator_config;

/* Defaults: rk45, rel 1e-9, abs 1e-12, max_step 1, t_end 100, monitoring. */
void bs_integrator_config_default(bs_integrator_config* cfg);

typedef enum bs_run_status {
  BS_RUN_COMPLETED = 0,
  BS_RUN_TRUNCATED_DIVERGENCE = 1,
  BS_RUN_NONFINITE_STATE = 2,
  BS_RUN_STEP_SIZE_UNDERFLOW = 3
} bs_run_status;

const char* bs_run_status_name(bs_run_status status);

typedef enum bs_event_kind {
  BS_EVENT_B_CROSSES_A = 0,
  BS_EVENT_A_LEAVES_UNIT_INTERVAL = 1,
  BS_EVENT_F_HITS_ZERO = 2,
  BS_EVENT_B_LEAVES_ZERO_TO_A = 3
} bs_event_kind;

const char* bs_event_kind_name(bs_event_kind kind);

/* Opaque trajectory handle. Model trajectories have dimension 3 (a, f, b);
 * closed-loop trajectories have dimension 6 (x1, re x2, im x2, re x3, im x3,
 * omega). */
typedef struct bs_trajectory bs_trajectory;

bs_status bs_simulate(const bs_params* p, const double state0[3],
                      const bs_integrator_config* cfg, bs_trajectory** out);

/* Starts at a(0)=b(0) (pass a0b0 <= 0 for the default midpoint of the
 * admissible window) with f(0)=f0 and monitors events. */
bs_status bs_crossing_experiment(const bs_params* p, double a0b0,
                                 const bs_integrator_config* cfg,
                                 bs_trajectory** out);

/* Closed loop: gains from margin, start at the augmented equilibrium plus a
 * uniform perturbation of the given amplitude drawn from seed. */
bs_status bs_feedback_simulate(const bs_params* p, double margin,
                               double amplitude, uint64_t seed,
                               const bs_integrator_config* cfg,
                               bs_trajectory** out);

void bs_trajectory_free(bs_trajectory* t);
int bs_trajectory_dim(const bs_trajectory* t);
size_t bs_trajectory_samples(const bs_trajectory* t);
bs_run_status bs_trajectory_status(const bs_trajectory* t);
/* state must hold bs_trajectory_dim() doubles. */
bs_status bs_trajectory_sample(const bs_trajectory* t, size_t i, double* time,
                               double* state);
size_t bs_trajectory_event_count(const bs_trajectory* t);
bs_status bs_trajectory_event(const bs_trajectory* t, size_t i,
                              bs_event_kind* kind, double* time,
                              double before[3], double after[3]);
bs_status bs_trajectory_write_csv(const bs_trajectory* t, const char* path);

/* Verifies a(t) in (0,1), f(t) > 0 at every sample while 0 <= b <= a has held
 * on the whole preceding interval (boundary_tol on all comparisons). */
typedef struct bs_invariance_report {
  size_t samples_checked;
  int precondition_broken;
  double precondition_break_time;
  size_t violations;
  double first_violation_time;
} bs_invariance_report;

bs_status bs_invariance_check(const bs_trajectory* t, double boundary_tol,
                              bs_invariance_report* out);

/* ---- ensembles ---- */

typedef struct bs_ensemble bs_ensemble;

typedef struct bs_ensemble_summary {
  size_t n;
  double amplitude;
  uint64_t seed;
  double max_initial;
  double mean_initial;
  double max_terminal;
  double mean_terminal;
} bs_ensemble_summary;

bs_status bs_ensemble_run(const bs_params* p, size_t n, double amplitude,
                          uint64_t seed, const bs_integrator_config* cfg,
                          bs_ensemble** out);
void bs_ensemble_free(bs_ensemble* e);
size_t bs_ensemble_size(const bs_ensemble* e);
/* Borrowed reference, valid while the ensemble lives; do not free. */
const bs_trajectory* bs_ensemble_trajectory(const bs_ensemble* e, size_t i);
bs_status bs_ensemble_get_summary(const bs_ensemble* e,
                                  bs_ensemble_summary* out);

/* ---- parameter atlas ---- */

typedef struct bs_range {
  double lo;
  double hi;
  int count; /* 1 pins the value at lo */
} bs_range;

typedef struct bs_sweep_spec {
  bs_range alpha, beta, gamma, zeta, eta, theta, f0;
  size_t max_points; /* 0 means the default cap of 1e6 */
} bs_sweep_spec;

/* Streams rows straight to a CSV file in deterministic grid order. */
bs_status bs_sweep_to_csv(const bs_sweep_spec* spec, const char* path,
                          size_t* rows_out);

/* free_param is one of "alpha","beta","gamma","zeta","eta","vartheta","f0". */
bs_status bs_hopf_boundary(const bs_params* base, const char* free_param,
                           double lo, double hi, double* out);

typedef enum bs_witness_branch {
  BS_WITNESS_LARGE_ALPHA_POSITIVE_DISC = 0,
  BS_WITNESS_SMALL_C_NEGATIVE_DISC_THETA_NEG = 1,
  BS_WITNESS_SMALL_ALPHA_NEGATIVE_DISC_THETA_POS = 2
} bs_witness_branch;

/* knob <= 0 and theta == 0 select the documented defaults. */
bs_status bs_discriminant_witness(bs_witness_branch branch, double knob,
                                  double theta, bs_params* out_params,
                                  double* out_discriminant);

/* ---- field sampling and plots ---- */

typedef enum bs_plane { BS_PLANE_AF = 0, BS_PLANE_AB = 1, BS_PLANE_FB = 2 } bs_plane;

/* Samples the velocity field on an nu x nv grid over the plane (the third
 * coordinate held at fixed_value); traj_time > 0 adds one short trajectory
 * per grid point. csv_path is required; svg_path may be NULL. */
bs_status bs_streamlines(const bs_params* p, bs_plane plane,
                         double fixed_value, double u_lo, double u_hi, int nu,
                         double v_lo, double v_hi, int nv, double traj_time,
                         const char* csv_path, const char* svg_path);

/* Phase-plane projection (a-f, a-b or f-b) of up to `count` trajectories,
 * with the equilibrium of p marked. */
bs_status bs_plot_phase(const bs_trajectory* const* trajs, size_t count,
                        const bs_params* p, bs_plane plane, const char* path);

/* Coordinate-vs-time panel; coord: 0 = a, 1 = f, 2 = b. */
bs_status bs_plot_series(const bs_trajectory* const* trajs, size_t count,
                         int coord, const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BURNSTAB_H */
