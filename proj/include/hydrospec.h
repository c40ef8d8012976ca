/* hydrospec C API: spectral analysis and multilayer simulation of the
 * semi-Lagrangian hydrostatic free-surface system.
 *
 * All functions return hs_status (HS_OK on success); on failure
 * hs_last_error() gives a thread-local message.  Objects are opaque handles
 * released with the matching *_release function.  Callbacks receive the user
 * context pointer passed at creation; they must be pure and reentrant.
 */
#ifndef HYDROSPEC_H
#define HYDROSPEC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hs_status {
  HS_OK = 0,
  HS_ERR_INVALID_ARGUMENT = 1,
  HS_ERR_PARSE = 2,
  HS_ERR_DOMAIN = 3,
  HS_ERR_NUMERICAL = 4,
  HS_ERR_INTERNAL = 5
} hs_status;

const char* hs_version(void);
/* Message for the last failing call on this thread ("" if none). */
const char* hs_last_error(void);

typedef struct hs_profile hs_profile;
typedef struct hs_layers hs_layers;
typedef struct hs_operator hs_operator;
typedef struct hs_spectrum hs_spectrum;
typedef struct hs_sim hs_sim;
typedef struct hs_phi hs_phi;
typedef struct hs_stationary hs_stationary;

typedef double (*hs_fn1)(double v, void* ctx);
typedef double (*hs_field2_fn)(double x, double lambda, void* ctx);
typedef double (*hs_field3_fn)(double t, double x, double z, void* ctx);

/* ---- profiles ---------------------------------------------------------- */

/* name: constant | affine | power_quarter | tanh_shear | convex_benchmark */
hs_status hs_profile_create_preset(const char* name, const double* params,
                                   size_t n_params, double gravity,
                                   hs_profile** out);
hs_status hs_profile_create_tabulated(const char* csv_path, double gravity,
                                      hs_profile** out);
/* monotone < 0 leaves the flag unset; holder_exponent <= 0 leaves the
 * regularity metadata unset. */
hs_status hs_profile_create_callback(hs_fn1 u, hs_fn1 h, void* ctx,
                                     double gravity, int monotone,
                                     double holder_exponent,
                                     double holder_constant, hs_profile** out);
hs_status hs_profile_eval(const hs_profile* p, double lambda, double* u,
                          double* h);
hs_status hs_profile_gravity(const hs_profile* p, double* gravity);
void hs_profile_release(hs_profile* p);

/* P0 layer means; gamma has n entries summing to 1. */
hs_status hs_profile_project(const hs_profile* p, const double* gamma,
                             size_t n, hs_layers** out);
hs_status hs_layers_create(const double* gamma, const double* u,
                           const double* h, size_t n, hs_layers** out);
hs_status hs_layers_count(const hs_layers* l, size_t* n);
/* any output pointer may be NULL; arrays must hold n entries */
hs_status hs_layers_get(const hs_layers* l, double* gamma, double* u,
                        double* h);
void hs_layers_release(hs_layers* l);

/* ---- continuous spectrum ----------------------------------------------- */

hs_status hs_eval_F(const hs_profile* p, double c_re, double c_im,
                    double* f_re, double* f_im, double* error_estimate);

typedef struct hs_localization {
  double u_minus, u_plus, sqrt_gh;
  double j_minus_lo, j_plus_hi;
  double rect_center, rect_radius, rect_height;
} hs_localization;

typedef struct hs_continuous_report {
  int has_c_minus, has_c_plus;
  double c_minus, c_plus;
  int has_f_limit_minus, has_f_limit_plus;
  double f_limit_minus, f_limit_plus; /* extrapolated hull limits */
  double essential_lo, essential_hi;
  hs_localization localization;
  int holder_half_guarantee;
  int holder_quarter_small_k;
  /* 0 monotone_vorticity, 1 single_critical_point, 2 neither,
   * 3 indeterminate */
  int fjortoft_class;
  size_t n_imaginary_roots; /* conjugates included */
} hs_continuous_report;

/* nu_max <= 0 picks sqrt(gh); the imaginary-axis scan runs only for
 * odd-symmetric velocity profiles. */
hs_status hs_analyze_continuous(const hs_profile* p, double nu_max,
                                int samples, hs_continuous_report* out,
                                double* imag_roots_re, double* imag_roots_im,
                                size_t roots_capacity);

/* ---- discrete (multilayer) spectrum ------------------------------------ */

hs_status hs_operator_create(const hs_layers* layers, double gravity,
                             hs_operator** out);
hs_status hs_operator_secular_eval(const hs_operator* op, double c_re,
                                   double c_im, double* f_re, double* f_im);
void hs_operator_release(hs_operator* op);

hs_status hs_eigen_all(const hs_operator* op, hs_spectrum** out);
hs_status hs_spectrum_count(const hs_spectrum* s, size_t* n);
hs_status hs_spectrum_eigenvalues(const hs_spectrum* s, double* re,
                                  double* im);
hs_status hs_spectrum_extremes(const hs_spectrum* s, double* c_minus,
                               double* c_plus);
hs_status hs_spectrum_stats(const hs_spectrum* s, int* real_count,
                            double* max_imag, size_t* n_duplicates);
hs_status hs_spectrum_flags(const hs_spectrum* s, int* hull_below_sqrt_ghn,
                            int* adjacent_gaps_small, int* pairwise_separated);
/* ok, worst margin and the J± occupation counts of the localization check */
hs_status hs_spectrum_check_localization(const hs_spectrum* s,
                                         const hs_operator* op, int* ok,
                                         double* worst_margin,
                                         int* j_minus_count,
                                         int* j_plus_count);
hs_status hs_spectrum_write_csv(const hs_spectrum* s, const char* path);
/* continuous side optional: pass the profile to include it, NULL to omit */
hs_status hs_spectrum_write_json(const hs_spectrum* s, const char* path,
                                 const hs_profile* continuous_side,
                                 double nu_max, int samples);
void hs_spectrum_release(hs_spectrum* s);

typedef struct hs_convergence_row {
  int n_layers;
  double max_imag;
  double bound;
  int within_bound;
} hs_convergence_row;

hs_status hs_convergence_study(const hs_profile* p, const int* n_list,
                               size_t n_count, hs_convergence_row* rows,
                               double* c_constant);
hs_status hs_convergence_write_csv(const hs_profile* p, const int* n_list,
                                   size_t n_count, const char* path);

/* ---- multilayer solver -------------------------------------------------- */

hs_status hs_sim_create(hs_field2_fn u, hs_field2_fn H, hs_fn1 zb, void* ctx,
                        double length, int n_cells, const double* gamma,
                        int n_layers, double gravity, hs_sim** out);
hs_status hs_sim_clone(const hs_sim* s, hs_sim** out);
hs_status hs_sim_time(const hs_sim* s, double* t);
hs_status hs_sim_step(hs_sim* s, double cfl, double dt_cap, double* dt_taken);
hs_status hs_sim_run(hs_sim* s, double t_end, double cfl);
hs_status hs_sim_size(const hs_sim* s, int* n_layers, int* n_cells);
/* arrays of n_layers*n_cells (layer-major), may be NULL */
hs_status hs_sim_state(const hs_sim* s, double* H, double* u);
typedef struct hs_diagnostics {
  double time;
  double energy;
  double max_wave_speed;
} hs_diagnostics;
hs_status hs_sim_diagnostics(const hs_sim* s, hs_diagnostics* d,
                             double* layer_mass /* n_layers, may be NULL */);
hs_status hs_sim_write_frame(const hs_sim* s, const char* dir, int index);
/* residual of the transported invariant over three time-ordered states */
hs_status hs_sim_riemann_residual(const hs_sim* before, const hs_sim* at,
                                  const hs_sim* after, int plus,
                                  double* max_norm);
void hs_sim_release(hs_sim* s);

/* ---- characteristics / change of variable ------------------------------ */

typedef struct hs_phi_grid {
  double x_min, x_max;
  int n_x, n_lambda;
  double seed_x_min, seed_x_max;
  int n_seeds;
} hs_phi_grid;

hs_status hs_phi_evolve(hs_field3_fn u, hs_field3_fn w, hs_field2_fn phi0,
                        void* ctx, double t_end, const hs_phi_grid* grid,
                        double dt, int check_every, hs_phi** out);
hs_status hs_phi_info(const hs_phi* p, int* valid, double* time,
                      double* min_dlambda_phi, double* blowup_time);
hs_status hs_phi_size(const hs_phi* p, int* n_lambda, int* n_x);
/* phi is n_lambda*n_x, row l then column j; any pointer may be NULL */
hs_status hs_phi_data(const hs_phi* p, double* x, double* lambda, double* phi);
hs_status hs_phi_write_csv(const hs_phi* p, const char* path);
void hs_phi_release(hs_phi* p);

double hs_blowup_time(double a_prime_inf, double eta0);

/* ---- stationary solutions ---------------------------------------------- */

/* Q and F_prime may be NULL (Q defaults to F'). */
hs_status hs_stationary_create(hs_fn1 F, hs_fn1 G, hs_fn1 Q, hs_fn1 F_prime,
                               void* ctx, double gravity, double x_min,
                               double x_max, int n_x, int n_lambda,
                               hs_stationary** out);
hs_status hs_stationary_eval(const hs_stationary* s, double x, double lambda,
                             double* u, double* H, double* phi);
hs_status hs_stationary_columns(const hs_stationary* s, double x, double* zb,
                                double* eta, double* h);
hs_status hs_stationary_write_csv(const hs_stationary* s,
                                  const char* fields_path,
                                  const char* columns_path);
/* project to n_layers x n_cells, run to time T, report drift */
hs_status hs_stationary_residual(const hs_stationary* s, int n_layers,
                                 int n_cells, double T, double cfl,
                                 int zero_topography, double* drift,
                                 double* mass_drift);
void hs_stationary_release(hs_stationary* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HYDROSPEC_H */
