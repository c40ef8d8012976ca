#include "hydrospec.h"

#include <cstring>
#include <memory>
#include <string>

#include "hydrospec/dispersion.hpp"
#include "hydrospec/errors.hpp"
#include "hydrospec/io.hpp"
#include "hydrospec/lagrangian.hpp"
#include "hydrospec/mlspectrum.hpp"
#include "hydrospec/mlsolver.hpp"
#include "hydrospec/profiles.hpp"
#include "hydrospec/stationary.hpp"

using namespace hydrospec;

struct hs_profile {
  ContinuousProfile p;
};
struct hs_layers {
  LayerState l;
};
struct hs_operator {
  MultilayerOperator op;
};
struct hs_spectrum {
  DiscreteSpectrumReport rep;
};
struct hs_sim {
  SimState s;
};
struct hs_phi {
  PhiField f;
};
struct hs_stationary {
  StationaryFields f;
};

namespace {

thread_local std::string g_last_error;

hs_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return HS_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return HS_ERR_PARSE;
    case ErrorCode::domain: return HS_ERR_DOMAIN;
    case ErrorCode::numerical: return HS_ERR_NUMERICAL;
    case ErrorCode::internal: return HS_ERR_INTERNAL;
  }
  return HS_ERR_INTERNAL;
}

template <typename Fn>
hs_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return HS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return HS_ERR_INTERNAL;
  }
}

hs_status need(bool ok, const char* what) {
  if (ok) return HS_OK;
  g_last_error = std::string("null argument: ") + what;
  return HS_ERR_INVALID_ARGUMENT;
}

} // namespace

extern "C" {

const char* hs_version(void) { return "0.1.0"; }

const char* hs_last_error(void) { return g_last_error.c_str(); }

/* ---- profiles ---------------------------------------------------------- */

hs_status hs_profile_create_preset(const char* name, const double* params,
                                   size_t n_params, double gravity,
                                   hs_profile** out) {
  if (auto st = need(name && out, "hs_profile_create_preset")) return st;
  return guarded([&] {
    std::span<const double> pspan(params, params ? n_params : 0);
    *out = new hs_profile{
        preset_profile(preset_from_name(name), pspan, gravity)};
  });
}

hs_status hs_profile_create_tabulated(const char* csv_path, double gravity,
                                      hs_profile** out) {
  if (auto st = need(csv_path && out, "hs_profile_create_tabulated")) return st;
  return guarded([&] {
    *out = new hs_profile{load_tabulated(csv_path, gravity)};
  });
}

hs_status hs_profile_create_callback(hs_fn1 u, hs_fn1 h, void* ctx,
                                     double gravity, int monotone,
                                     double holder_exponent,
                                     double holder_constant,
                                     hs_profile** out) {
  if (auto st = need(u && h && out, "hs_profile_create_callback")) return st;
  return guarded([&] {
    ProfileFlags flags;
    if (monotone >= 0) flags.strictly_monotone = monotone > 0;
    if (holder_exponent > 0.0) {
      flags.holder_exponent = holder_exponent;
      flags.holder_constant = holder_constant;
    }
    *out = new hs_profile{ContinuousProfile(
        [u, ctx](double l) { return u(l, ctx); },
        [h, ctx](double l) { return h(l, ctx); }, gravity, flags)};
  });
}

hs_status hs_profile_eval(const hs_profile* p, double lambda, double* u,
                          double* h) {
  if (auto st = need(p != nullptr, "hs_profile_eval")) return st;
  return guarded([&] {
    if (u) *u = p->p.u(lambda);
    if (h) *h = p->p.h(lambda);
  });
}

hs_status hs_profile_gravity(const hs_profile* p, double* gravity) {
  if (auto st = need(p && gravity, "hs_profile_gravity")) return st;
  *gravity = p->p.gravity();
  return HS_OK;
}

void hs_profile_release(hs_profile* p) { delete p; }

hs_status hs_profile_project(const hs_profile* p, const double* gamma,
                             size_t n, hs_layers** out) {
  if (auto st = need(p && gamma && out && n > 0, "hs_profile_project"))
    return st;
  return guarded([&] {
    *out = new hs_layers{project_p0(p->p, std::span<const double>(gamma, n))};
  });
}

hs_status hs_layers_create(const double* gamma, const double* u,
                           const double* h, size_t n, hs_layers** out) {
  if (auto st = need(gamma && u && h && out && n > 0, "hs_layers_create"))
    return st;
  return guarded([&] {
    LayerState l;
    l.gamma.assign(gamma, gamma + n);
    l.u.assign(u, u + n);
    l.h.assign(h, h + n);
    l.validate();
    *out = new hs_layers{std::move(l)};
  });
}

hs_status hs_layers_count(const hs_layers* l, size_t* n) {
  if (auto st = need(l && n, "hs_layers_count")) return st;
  *n = l->l.gamma.size();
  return HS_OK;
}

hs_status hs_layers_get(const hs_layers* l, double* gamma, double* u,
                        double* h) {
  if (auto st = need(l != nullptr, "hs_layers_get")) return st;
  const size_t n = l->l.gamma.size();
  if (gamma) std::memcpy(gamma, l->l.gamma.data(), n * sizeof(double));
  if (u) std::memcpy(u, l->l.u.data(), n * sizeof(double));
  if (h) std::memcpy(h, l->l.h.data(), n * sizeof(double));
  return HS_OK;
}

void hs_layers_release(hs_layers* l) { delete l; }

/* ---- continuous spectrum ----------------------------------------------- */

hs_status hs_eval_F(const hs_profile* p, double c_re, double c_im,
                    double* f_re, double* f_im, double* error_estimate) {
  if (auto st = need(p != nullptr, "hs_eval_F")) return st;
  return guarded([&] {
    const auto s = eval_F(p->p, {c_re, c_im});
    if (f_re) *f_re = s.value.real();
    if (f_im) *f_im = s.value.imag();
    if (error_estimate) *error_estimate = s.quadrature_error_estimate;
  });
}

hs_status hs_analyze_continuous(const hs_profile* p, double nu_max,
                                int samples, hs_continuous_report* out,
                                double* imag_roots_re, double* imag_roots_im,
                                size_t roots_capacity) {
  if (auto st = need(p && out, "hs_analyze_continuous")) return st;
  return guarded([&] {
    const auto rep = analyze_continuous_spectrum(p->p, nu_max, samples);
    std::memset(out, 0, sizeof *out);
    out->has_c_minus = rep.real_roots.c_minus.has_value();
    out->has_c_plus = rep.real_roots.c_plus.has_value();
    out->c_minus = rep.real_roots.c_minus.value_or(0.0);
    out->c_plus = rep.real_roots.c_plus.value_or(0.0);
    out->has_f_limit_minus = rep.real_roots.f_limit_minus.has_value();
    out->has_f_limit_plus = rep.real_roots.f_limit_plus.has_value();
    out->f_limit_minus = rep.real_roots.f_limit_minus.value_or(0.0);
    out->f_limit_plus = rep.real_roots.f_limit_plus.value_or(0.0);
    out->essential_lo = rep.essential_lo;
    out->essential_hi = rep.essential_hi;
    out->localization = {rep.localization.u_minus, rep.localization.u_plus,
                         rep.localization.sqrt_gh, rep.localization.j_minus_lo,
                         rep.localization.j_plus_hi,
                         rep.localization.rect_center,
                         rep.localization.rect_radius,
                         rep.localization.rect_height};
    out->holder_half_guarantee = rep.predicates.holder_half_guarantee;
    out->holder_quarter_small_k = rep.predicates.holder_quarter_small_k;
    out->fjortoft_class = static_cast<int>(rep.predicates.fjortoft);
    out->n_imaginary_roots = rep.imaginary_roots.size();
    if (imag_roots_re && imag_roots_im) {
      const size_t n = std::min(roots_capacity, rep.imaginary_roots.size());
      for (size_t i = 0; i < n; ++i) {
        imag_roots_re[i] = rep.imaginary_roots[i].real();
        imag_roots_im[i] = rep.imaginary_roots[i].imag();
      }
    }
  });
}

/* ---- discrete spectrum -------------------------------------------------- */

hs_status hs_operator_create(const hs_layers* layers, double gravity,
                             hs_operator** out) {
  if (auto st = need(layers && out, "hs_operator_create")) return st;
  return guarded([&] { *out = new hs_operator{assemble(layers->l, gravity)}; });
}

hs_status hs_operator_secular_eval(const hs_operator* op, double c_re,
                                   double c_im, double* f_re, double* f_im) {
  if (auto st = need(op != nullptr, "hs_operator_secular_eval")) return st;
  return guarded([&] {
    const auto v = secular_eval(op->op, {c_re, c_im});
    if (f_re) *f_re = v.real();
    if (f_im) *f_im = v.imag();
  });
}

void hs_operator_release(hs_operator* op) { delete op; }

hs_status hs_eigen_all(const hs_operator* op, hs_spectrum** out) {
  if (auto st = need(op && out, "hs_eigen_all")) return st;
  return guarded([&] { *out = new hs_spectrum{eigen_all(op->op)}; });
}

hs_status hs_spectrum_count(const hs_spectrum* s, size_t* n) {
  if (auto st = need(s && n, "hs_spectrum_count")) return st;
  *n = s->rep.eigenvalues.size();
  return HS_OK;
}

hs_status hs_spectrum_eigenvalues(const hs_spectrum* s, double* re,
                                  double* im) {
  if (auto st = need(s && re && im, "hs_spectrum_eigenvalues")) return st;
  for (size_t i = 0; i < s->rep.eigenvalues.size(); ++i) {
    re[i] = s->rep.eigenvalues[i].real();
    im[i] = s->rep.eigenvalues[i].imag();
  }
  return HS_OK;
}

hs_status hs_spectrum_extremes(const hs_spectrum* s, double* c_minus,
                               double* c_plus) {
  if (auto st = need(s != nullptr, "hs_spectrum_extremes")) return st;
  if (c_minus) *c_minus = s->rep.c_minus;
  if (c_plus) *c_plus = s->rep.c_plus;
  return HS_OK;
}

hs_status hs_spectrum_stats(const hs_spectrum* s, int* real_count,
                            double* max_imag, size_t* n_duplicates) {
  if (auto st = need(s != nullptr, "hs_spectrum_stats")) return st;
  if (real_count) *real_count = s->rep.real_count;
  if (max_imag) *max_imag = s->rep.max_imag;
  if (n_duplicates)
    *n_duplicates = s->rep.duplicate_velocity_eigenvalues.size();
  return HS_OK;
}

hs_status hs_spectrum_flags(const hs_spectrum* s, int* hull_below_sqrt_ghn,
                            int* adjacent_gaps_small,
                            int* pairwise_separated) {
  if (auto st = need(s != nullptr, "hs_spectrum_flags")) return st;
  if (hull_below_sqrt_ghn)
    *hull_below_sqrt_ghn = s->rep.condition_flags.hull_below_sqrt_ghn;
  if (adjacent_gaps_small)
    *adjacent_gaps_small = s->rep.condition_flags.adjacent_gaps_small;
  if (pairwise_separated)
    *pairwise_separated = s->rep.condition_flags.pairwise_separated;
  return HS_OK;
}

hs_status hs_spectrum_check_localization(const hs_spectrum* s,
                                         const hs_operator* op, int* ok,
                                         double* worst_margin,
                                         int* j_minus_count,
                                         int* j_plus_count) {
  if (auto st = need(s && op, "hs_spectrum_check_localization")) return st;
  return guarded([&] {
    const auto c = check_localization(s->rep, op->op);
    if (ok) *ok = c.ok;
    if (worst_margin) *worst_margin = c.worst_margin;
    if (j_minus_count) *j_minus_count = c.j_minus_count;
    if (j_plus_count) *j_plus_count = c.j_plus_count;
  });
}

hs_status hs_spectrum_write_csv(const hs_spectrum* s, const char* path) {
  if (auto st = need(s && path, "hs_spectrum_write_csv")) return st;
  return guarded([&] { write_eigenvalues_csv(path, s->rep); });
}

hs_status hs_spectrum_write_json(const hs_spectrum* s, const char* path,
                                 const hs_profile* continuous_side,
                                 double nu_max, int samples) {
  if (auto st = need(s && path, "hs_spectrum_write_json")) return st;
  return guarded([&] {
    if (continuous_side) {
      const auto crep =
          analyze_continuous_spectrum(continuous_side->p, nu_max, samples);
      write_spectrum_json(path, s->rep, &crep);
    } else {
      write_spectrum_json(path, s->rep, nullptr);
    }
  });
}

void hs_spectrum_release(hs_spectrum* s) { delete s; }

hs_status hs_convergence_study(const hs_profile* p, const int* n_list,
                               size_t n_count, hs_convergence_row* rows,
                               double* c_constant) {
  if (auto st = need(p && n_list && rows && n_count > 0,
                     "hs_convergence_study"))
    return st;
  return guarded([&] {
    std::vector<int> ns(n_list, n_list + n_count);
    const auto study = convergence_study(p->p, ns);
    for (size_t i = 0; i < study.rows.size(); ++i) {
      rows[i] = {study.rows[i].n_layers, study.rows[i].max_imag,
                 study.rows[i].bound, study.rows[i].within_bound};
    }
    if (c_constant) *c_constant = study.c_constant;
  });
}

hs_status hs_convergence_write_csv(const hs_profile* p, const int* n_list,
                                   size_t n_count, const char* path) {
  if (auto st = need(p && n_list && path, "hs_convergence_write_csv"))
    return st;
  return guarded([&] {
    std::vector<int> ns(n_list, n_list + n_count);
    write_convergence_csv(path, convergence_study(p->p, ns));
  });
}

/* ---- solver -------------------------------------------------------------- */

hs_status hs_sim_create(hs_field2_fn u, hs_field2_fn H, hs_fn1 zb, void* ctx,
                        double length, int n_cells, const double* gamma,
                        int n_layers, double gravity, hs_sim** out) {
  if (auto st = need(u && H && gamma && out && n_layers > 0, "hs_sim_create"))
    return st;
  return guarded([&] {
    std::function<double(double)> zf;
    if (zb) zf = [zb, ctx](double x) { return zb(x, ctx); };
    *out = new hs_sim{init_from_profiles(
        [u, ctx](double x, double l) { return u(x, l, ctx); },
        [H, ctx](double x, double l) { return H(x, l, ctx); }, zf, length,
        n_cells, std::span<const double>(gamma, static_cast<size_t>(n_layers)),
        gravity)};
  });
}

hs_status hs_sim_clone(const hs_sim* s, hs_sim** out) {
  if (auto st = need(s && out, "hs_sim_clone")) return st;
  *out = new hs_sim{s->s};
  return HS_OK;
}

hs_status hs_sim_time(const hs_sim* s, double* t) {
  if (auto st = need(s && t, "hs_sim_time")) return st;
  *t = s->s.time;
  return HS_OK;
}

hs_status hs_sim_step(hs_sim* s, double cfl, double dt_cap, double* dt_taken) {
  if (auto st = need(s != nullptr, "hs_sim_step")) return st;
  return guarded([&] {
    const double dt = step(s->s, cfl, dt_cap);
    if (dt_taken) *dt_taken = dt;
  });
}

hs_status hs_sim_run(hs_sim* s, double t_end, double cfl) {
  if (auto st = need(s != nullptr, "hs_sim_run")) return st;
  return guarded([&] {
    while (s->s.time < t_end - 1e-14 * (1.0 + t_end))
      step(s->s, cfl, t_end - s->s.time);
  });
}

hs_status hs_sim_size(const hs_sim* s, int* n_layers, int* n_cells) {
  if (auto st = need(s != nullptr, "hs_sim_size")) return st;
  if (n_layers) *n_layers = s->s.n_layers;
  if (n_cells) *n_cells = s->s.n_cells;
  return HS_OK;
}

hs_status hs_sim_state(const hs_sim* s, double* H, double* u) {
  if (auto st = need(s != nullptr, "hs_sim_state")) return st;
  const size_t n = s->s.H.size();
  if (H) std::memcpy(H, s->s.H.data(), n * sizeof(double));
  if (u)
    for (size_t i = 0; i < n; ++i) u[i] = s->s.Q[i] / s->s.H[i];
  return HS_OK;
}

hs_status hs_sim_diagnostics(const hs_sim* s, hs_diagnostics* d,
                             double* layer_mass) {
  if (auto st = need(s && d, "hs_sim_diagnostics")) return st;
  return guarded([&] {
    const auto diag = diagnostics(s->s);
    d->time = diag.time;
    d->energy = diag.energy;
    d->max_wave_speed = diag.max_wave_speed;
    if (layer_mass)
      std::memcpy(layer_mass, diag.layer_mass.data(),
                  diag.layer_mass.size() * sizeof(double));
  });
}

hs_status hs_sim_write_frame(const hs_sim* s, const char* dir, int index) {
  if (auto st = need(s && dir, "hs_sim_write_frame")) return st;
  return guarded([&] { write_frame(dir, index, s->s); });
}

hs_status hs_sim_riemann_residual(const hs_sim* before, const hs_sim* at,
                                  const hs_sim* after, int plus,
                                  double* max_norm) {
  if (auto st = need(before && at && after && max_norm,
                     "hs_sim_riemann_residual"))
    return st;
  return guarded([&] {
    *max_norm = riemann_residual(before->s, at->s, after->s, plus != 0)
                    .max_norm;
  });
}

void hs_sim_release(hs_sim* s) { delete s; }

/* ---- characteristics ----------------------------------------------------- */

hs_status hs_phi_evolve(hs_field3_fn u, hs_field3_fn w, hs_field2_fn phi0,
                        void* ctx, double t_end, const hs_phi_grid* grid,
                        double dt, int check_every, hs_phi** out) {
  if (auto st = need(u && w && phi0 && grid && out, "hs_phi_evolve"))
    return st;
  return guarded([&] {
    PhiGrid g{grid->x_min,      grid->x_max,      grid->n_x,
              grid->n_lambda,   grid->seed_x_min, grid->seed_x_max,
              grid->n_seeds};
    EvolveOptions opt;
    if (dt > 0.0) opt.dt = dt;
    if (check_every > 0) opt.check_every = check_every;
    *out = new hs_phi{evolve_phi(
        [u, ctx](double t, double x, double z) { return u(t, x, z, ctx); },
        [w, ctx](double t, double x, double z) { return w(t, x, z, ctx); },
        [phi0, ctx](double x, double l) { return phi0(x, l, ctx); }, t_end, g,
        opt)};
  });
}

hs_status hs_phi_info(const hs_phi* p, int* valid, double* time,
                      double* min_dlambda_phi, double* blowup_time) {
  if (auto st = need(p != nullptr, "hs_phi_info")) return st;
  if (valid) *valid = p->f.valid;
  if (time) *time = p->f.time;
  if (min_dlambda_phi) *min_dlambda_phi = p->f.min_dlambda_phi;
  if (blowup_time) *blowup_time = p->f.blowup_time;
  return HS_OK;
}

hs_status hs_phi_size(const hs_phi* p, int* n_lambda, int* n_x) {
  if (auto st = need(p != nullptr, "hs_phi_size")) return st;
  if (n_lambda) *n_lambda = static_cast<int>(p->f.lambda.size());
  if (n_x) *n_x = static_cast<int>(p->f.x.size());
  return HS_OK;
}

hs_status hs_phi_data(const hs_phi* p, double* x, double* lambda,
                      double* phi) {
  if (auto st = need(p != nullptr, "hs_phi_data")) return st;
  if (x) std::memcpy(x, p->f.x.data(), p->f.x.size() * sizeof(double));
  if (lambda)
    std::memcpy(lambda, p->f.lambda.data(),
                p->f.lambda.size() * sizeof(double));
  if (phi)
    std::memcpy(phi, p->f.phi.data(), p->f.phi.size() * sizeof(double));
  return HS_OK;
}

hs_status hs_phi_write_csv(const hs_phi* p, const char* path) {
  if (auto st = need(p && path, "hs_phi_write_csv")) return st;
  return guarded([&] { write_phi_csv(path, p->f); });
}

void hs_phi_release(hs_phi* p) { delete p; }

double hs_blowup_time(double a_prime_inf, double eta0) {
  try {
    return blowup_time(a_prime_inf, eta0);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return -1.0;
  }
}

/* ---- stationary ----------------------------------------------------------- */

hs_status hs_stationary_create(hs_fn1 F, hs_fn1 G, hs_fn1 Q, hs_fn1 F_prime,
                               void* ctx, double gravity, double x_min,
                               double x_max, int n_x, int n_lambda,
                               hs_stationary** out) {
  if (auto st = need(F && G && out, "hs_stationary_create")) return st;
  return guarded([&] {
    StationarySpec spec;
    spec.F = [F, ctx](double l) { return F(l, ctx); };
    spec.G = [G, ctx](double x) { return G(x, ctx); };
    if (Q) spec.Q = [Q, ctx](double l) { return Q(l, ctx); };
    if (F_prime)
      spec.F_prime = [F_prime, ctx](double l) { return F_prime(l, ctx); };
    spec.gravity = gravity;
    *out = new hs_stationary{
        build_stationary(std::move(spec), {x_min, x_max, n_x, n_lambda})};
  });
}

hs_status hs_stationary_eval(const hs_stationary* s, double x, double lambda,
                             double* u, double* H, double* phi) {
  if (auto st = need(s != nullptr, "hs_stationary_eval")) return st;
  return guarded([&] {
    if (u) *u = s->f.u(x, lambda);
    if (H) *H = s->f.H(x, lambda);
    if (phi) *phi = s->f.phi(x, lambda);
  });
}

hs_status hs_stationary_columns(const hs_stationary* s, double x, double* zb,
                                double* eta, double* h) {
  if (auto st = need(s != nullptr, "hs_stationary_columns")) return st;
  return guarded([&] {
    if (zb) *zb = s->f.zb(x);
    if (eta) *eta = s->f.eta(x);
    if (h) *h = s->f.h(x);
  });
}

hs_status hs_stationary_write_csv(const hs_stationary* s,
                                  const char* fields_path,
                                  const char* columns_path) {
  if (auto st = need(s && fields_path && columns_path,
                     "hs_stationary_write_csv"))
    return st;
  return guarded([&] {
    write_stationary_csv(fields_path, columns_path, s->f);
  });
}

hs_status hs_stationary_residual(const hs_stationary* s, int n_layers,
                                 int n_cells, double T, double cfl,
                                 int zero_topography, double* drift,
                                 double* mass_drift) {
  if (auto st = need(s && drift, "hs_stationary_residual")) return st;
  return guarded([&] {
    const auto r = stationarity_residual(s->f, n_layers, n_cells, T, cfl,
                                         zero_topography != 0);
    *drift = r.drift;
    if (mass_drift) *mass_drift = r.mass_drift;
  });
}

void hs_stationary_release(hs_stationary* s) { delete s; }

} // extern "C"
