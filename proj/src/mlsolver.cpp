#include "hydrospec/mlsolver.hpp"

#include <algorithm>
#include <cmath>

#include "hydrospec/errors.hpp"
#include "hydrospec/mlspectrum.hpp"

namespace hydrospec {

namespace {

struct Rhs {
  std::vector<double> dH;
  std::vector<double> dQ;
};

// Semi-discrete right-hand side: per-layer Rusanov fluxes for (H, Hu) with
// the spectral interface speed plus the centered nonconservative coupling
// -g H d_x(sum gamma H + zb).
void eval_rhs(const SimState& s, Rhs& out) {
  const int n = s.n_layers, m = s.n_cells;
  const double dx = s.dx();
  out.dH.assign(static_cast<size_t>(n) * m, 0.0);
  out.dQ.assign(static_cast<size_t>(n) * m, 0.0);

  std::vector<double> a(m), pressure(m);
  for (int j = 0; j < m; ++j) {
    a[j] = s.wave_speed_at(j);
    pressure[j] = s.depth_at(j) + s.zb[j];
  }

  for (int alpha = 0; alpha < n; ++alpha) {
    const double* H = &s.H[static_cast<size_t>(alpha) * m];
    const double* Q = &s.Q[static_cast<size_t>(alpha) * m];
    double* dH = &out.dH[static_cast<size_t>(alpha) * m];
    double* dQ = &out.dQ[static_cast<size_t>(alpha) * m];
    // fluxes at interface j+1/2 between cells j and j+1 (periodic)
    double fm_prev = 0.0, fq_prev = 0.0;
    // interface M-1/2 == -1/2 computed first for the wrap-around
    auto flux = [&](int j, int jp, double& fm, double& fq) {
      const double sp = std::max(a[j], a[jp]);
      const double ul = Q[j] / H[j], ur = Q[jp] / H[jp];
      fm = 0.5 * (Q[j] + Q[jp]) - 0.5 * sp * (H[jp] - H[j]);
      fq = 0.5 * (Q[j] * ul + Q[jp] * ur) - 0.5 * sp * (Q[jp] - Q[j]);
    };
    flux(m - 1, 0, fm_prev, fq_prev);
    const double fm_wrap = fm_prev, fq_wrap = fq_prev;
    for (int j = 0; j < m; ++j) {
      double fm, fq;
      if (j + 1 < m) flux(j, j + 1, fm, fq);
      else { fm = fm_wrap; fq = fq_wrap; }
      dH[j] = -(fm - fm_prev) / dx;
      dQ[j] = -(fq - fq_prev) / dx;
      fm_prev = fm;
      fq_prev = fq;
    }
    for (int j = 0; j < m; ++j) {
      const int jl = j == 0 ? m - 1 : j - 1;
      const int jr = j + 1 == m ? 0 : j + 1;
      const double grad = (pressure[jr] - pressure[jl]) / (2.0 * dx);
      dQ[j] -= s.gravity * H[j] * grad;
    }
  }
}

void check_positivity(const SimState& s, const char* where) {
  for (int alpha = 0; alpha < s.n_layers; ++alpha)
    for (int j = 0; j < s.n_cells; ++j) {
      const double h = s.h_at(alpha, j);
      if (!(h > 0.0) || !std::isfinite(h) || !std::isfinite(s.q_at(alpha, j)))
        fail(ErrorCode::numerical,
             std::string("solver: positivity lost (") + where + ") in cell " +
                 std::to_string(j) + ", layer " + std::to_string(alpha) +
                 " at t=" + std::to_string(s.time));
    }
}

} // namespace

double SimState::depth_at(int j) const {
  double s = 0.0;
  for (int alpha = 0; alpha < n_layers; ++alpha)
    s += gamma[alpha] * h_at(alpha, j);
  return s;
}

double SimState::wave_speed_at(int j) const {
  double umax = 0.0;
  for (int alpha = 0; alpha < n_layers; ++alpha)
    umax = std::max(umax, std::fabs(u_at(alpha, j)));
  return umax + std::sqrt(gravity * depth_at(j));
}

LayerState SimState::layer_state_at(int j) const {
  LayerState ls;
  ls.gamma = gamma;
  ls.u.resize(n_layers);
  ls.h.resize(n_layers);
  for (int alpha = 0; alpha < n_layers; ++alpha) {
    ls.h[alpha] = h_at(alpha, j);
    ls.u[alpha] = u_at(alpha, j);
  }
  return ls;
}

void SimState::validate() const {
  if (n_layers <= 0 || n_cells <= 0 || !(length > 0.0) || !(gravity > 0.0))
    fail(ErrorCode::invalid_argument, "sim state: bad dimensions");
  if (gamma.size() != static_cast<size_t>(n_layers) ||
      zb.size() != static_cast<size_t>(n_cells) ||
      H.size() != static_cast<size_t>(n_layers) * n_cells ||
      Q.size() != H.size())
    fail(ErrorCode::invalid_argument, "sim state: inconsistent array sizes");
  double s = 0.0;
  for (double gi : gamma) {
    if (!(gi > 0.0))
      fail(ErrorCode::invalid_argument, "sim state: widths must be positive");
    s += gi;
  }
  if (std::fabs(s - 1.0) > 1e-14 * n_layers)
    fail(ErrorCode::invalid_argument, "sim state: widths must sum to 1");
  check_positivity(*this, "validate");
}

SimState init_from_profiles(
    const std::function<double(double, double)>& u,
    const std::function<double(double, double)>& H,
    const std::function<double(double)>& zb, double length, int n_cells,
    std::span<const double> gamma, double gravity) {
  if (n_cells <= 0 || !(length > 0.0))
    fail(ErrorCode::invalid_argument, "init_from_profiles: bad grid");
  SimState s;
  s.n_layers = static_cast<int>(gamma.size());
  s.n_cells = n_cells;
  s.length = length;
  s.gravity = gravity;
  s.gamma.assign(gamma.begin(), gamma.end());
  s.zb.resize(n_cells);
  s.H.resize(gamma.size() * n_cells);
  s.Q.resize(gamma.size() * n_cells);
  for (int j = 0; j < n_cells; ++j) {
    const double x = s.x_center(j);  // midpoint rule in x
    s.zb[j] = zb ? zb(x) : 0.0;
    ContinuousProfile column([&u, x](double l) { return u(x, l); },
                             [&H, x](double l) { return H(x, l); }, gravity);
    const LayerState ls = project_p0(column, gamma);
    for (int alpha = 0; alpha < s.n_layers; ++alpha) {
      s.h_at(alpha, j) = ls.h[alpha];
      s.q_at(alpha, j) = ls.h[alpha] * ls.u[alpha];
    }
  }
  s.validate();
  return s;
}

SimState init_from_profiles_uniform(
    const std::function<double(double, double)>& u,
    const std::function<double(double, double)>& H,
    const std::function<double(double)>& zb, double length, int n_cells,
    int n_layers, double gravity) {
  std::vector<double> g(static_cast<size_t>(n_layers), 1.0 / n_layers);
  return init_from_profiles(u, H, zb, length, n_cells, g, gravity);
}

double step(SimState& state, double cfl, double dt_cap) {
  if (!(cfl > 0.0) || cfl > 1.0)
    fail(ErrorCode::invalid_argument, "step: cfl must be in (0,1]");
  double amax = 0.0;
  for (int j = 0; j < state.n_cells; ++j)
    amax = std::max(amax, state.wave_speed_at(j));
  if (!std::isfinite(amax) || amax > 1e12)
    fail(ErrorCode::numerical, "step: wave speed blow-up at t=" +
                                   std::to_string(state.time));
  double dt = cfl * state.dx() / amax;
  if (dt_cap > 0.0) dt = std::min(dt, dt_cap);

  const size_t sz = state.H.size();
  Rhs k1, k2;
  eval_rhs(state, k1);
  SimState stage = state;
  for (size_t i = 0; i < sz; ++i) {
    stage.H[i] = state.H[i] + dt * k1.dH[i];
    stage.Q[i] = state.Q[i] + dt * k1.dQ[i];
  }
  stage.time = state.time + dt;
  check_positivity(stage, "stage 1");
  eval_rhs(stage, k2);
  for (size_t i = 0; i < sz; ++i) {
    state.H[i] = 0.5 * (state.H[i] + stage.H[i] + dt * k2.dH[i]);
    state.Q[i] = 0.5 * (state.Q[i] + stage.Q[i] + dt * k2.dQ[i]);
  }
  state.time += dt;
  check_positivity(state, "stage 2");
  return dt;
}

Diagnostics diagnostics(const SimState& s) {
  Diagnostics d;
  d.time = s.time;
  d.layer_mass.resize(s.n_layers, 0.0);
  const double dx = s.dx();
  for (int alpha = 0; alpha < s.n_layers; ++alpha) {
    double m = 0.0;
    for (int j = 0; j < s.n_cells; ++j) m += s.h_at(alpha, j);
    d.layer_mass[alpha] = m * dx;
  }
  double e = 0.0;
  for (int j = 0; j < s.n_cells; ++j) {
    const double hn = s.depth_at(j);
    double col = 0.0;
    for (int alpha = 0; alpha < s.n_layers; ++alpha) {
      const double u = s.u_at(alpha, j);
      col += s.gamma[alpha] * s.h_at(alpha, j) *
             (0.5 * u * u + s.gravity * s.zb[j] + 0.5 * s.gravity * hn);
    }
    e += col;
    d.max_wave_speed = std::max(d.max_wave_speed, s.wave_speed_at(j));
  }
  d.energy = e * dx;
  return d;
}

RunResult run(SimState state, double t_end, double cfl, int diagnostics_every,
              int snapshot_every) {
  if (t_end < state.time)
    fail(ErrorCode::invalid_argument, "run: t_end before current time");
  RunResult out;
  out.series.push_back(diagnostics(state));
  if (snapshot_every > 0) out.snapshots.push_back(state);
  long step_count = 0;
  while (state.time < t_end - 1e-14 * (1.0 + t_end)) {
    step(state, cfl, t_end - state.time);
    ++step_count;
    if (diagnostics_every > 0 && step_count % diagnostics_every == 0)
      out.series.push_back(diagnostics(state));
    if (snapshot_every > 0 && step_count % snapshot_every == 0)
      out.snapshots.push_back(state);
  }
  if (out.series.back().time != state.time)
    out.series.push_back(diagnostics(state));
  if (snapshot_every > 0 && out.snapshots.back().time != state.time)
    out.snapshots.push_back(state);
  out.final_state = std::move(state);
  return out;
}

RiemannResidualReport riemann_residual(const SimState& before,
                                       const SimState& at,
                                       const SimState& after, bool plus) {
  const int m = at.n_cells;
  if (before.n_cells != m || after.n_cells != m ||
      before.n_layers != at.n_layers || after.n_layers != at.n_layers)
    fail(ErrorCode::invalid_argument, "riemann_residual: frame mismatch");
  if (!(after.time > at.time && at.time > before.time))
    fail(ErrorCode::invalid_argument,
         "riemann_residual: frames must be time-ordered");

  RiemannResidualReport rep;
  rep.field.assign(m, 0.0);

  auto invariant = [&](const SimState& s, int j, bool want_plus,
                       bool* ok) -> double {
    const MultilayerOperator op = assemble(s.layer_state_at(j), s.gravity);
    double c;
    try {
      const auto [cm, cp] = secular_extreme_roots(op);
      c = want_plus ? cp : cm;
    } catch (const Error&) {
      *ok = false;
      return 0.0;
    }
    double sum = 0.0;
    for (int alpha = 0; alpha < s.n_layers; ++alpha)
      sum += s.gamma[alpha] * s.h_at(alpha, j) / (s.u_at(alpha, j) - c);
    *ok = true;
    return c - s.gravity * sum - s.gravity * s.zb[j];
  };

  std::vector<double> r0(m), r1(m), r2(m), c1(m);
  for (int j = 0; j < m; ++j) {
    bool ok0 = true, ok1 = true, ok2 = true;
    r0[j] = invariant(before, j, plus, &ok0);
    r1[j] = invariant(at, j, plus, &ok1);
    r2[j] = invariant(after, j, plus, &ok2);
    const MultilayerOperator op = assemble(at.layer_state_at(j), at.gravity);
    const auto [cm, cp] = secular_extreme_roots(op);
    c1[j] = plus ? cp : cm;
    if (!(ok0 && ok1 && ok2)) rep.flagged_cells.push_back(j);
  }
  const double dx = at.dx();
  const double dt2 = after.time - before.time;
  for (int j = 0; j < m; ++j) {
    const int jl = j == 0 ? m - 1 : j - 1;
    const int jr = j + 1 == m ? 0 : j + 1;
    const double rt = (r2[j] - r0[j]) / dt2;
    const double rx = (r1[jr] - r1[jl]) / (2.0 * dx);
    rep.field[j] = rt + c1[j] * rx;
    rep.max_norm = std::max(rep.max_norm, std::fabs(rep.field[j]));
  }
  return rep;
}

} // namespace hydrospec
