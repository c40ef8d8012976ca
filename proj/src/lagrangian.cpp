#include "hydrospec/lagrangian.hpp"

#include <algorithm>
#include <cmath>

#include "hydrospec/errors.hpp"

namespace hydrospec {

namespace {

struct SeedArrays {
  int ny = 0, nl = 0;
  std::vector<double> y, lam;  // seed coordinates
  std::vector<double> X, P;    // current characteristic positions [l*ny + i]

  double& x_at(int l, int i) { return X[static_cast<size_t>(l) * ny + i]; }
  double x_at(int l, int i) const { return X[static_cast<size_t>(l) * ny + i]; }
  double& p_at(int l, int i) { return P[static_cast<size_t>(l) * ny + i]; }
  double p_at(int l, int i) const { return P[static_cast<size_t>(l) * ny + i]; }
};

// d_lambda phi on the seed grid by the chain rule
//   d_lambda phi = P_lambda - P_y X_lambda / X_y,
// all four derivatives by central differences (one-sided at the borders).
// A fold of the x-map (X_y <= 0) means the change of variable is already
// multivalued, reported as a nonpositive value.
double min_dlambda_phi(const SeedArrays& s) {
  const int ny = s.ny, nl = s.nl;
  auto d_y = [&](const std::vector<double>& f, int l, int i) {
    const int i0 = std::max(0, i - 1), i1 = std::min(ny - 1, i + 1);
    return (f[static_cast<size_t>(l) * ny + i1] -
            f[static_cast<size_t>(l) * ny + i0]) /
           (s.y[i1] - s.y[i0]);
  };
  auto d_l = [&](const std::vector<double>& f, int l, int i) {
    const int l0 = std::max(0, l - 1), l1 = std::min(nl - 1, l + 1);
    return (f[static_cast<size_t>(l1) * ny + i] -
            f[static_cast<size_t>(l0) * ny + i]) /
           (s.lam[l1] - s.lam[l0]);
  };
  double best = 1e300;
  for (int l = 0; l < nl; ++l)
    for (int i = 0; i < ny; ++i) {
      const double xy = d_y(s.X, l, i);
      if (xy <= 0.0) return -1.0;  // folded characteristics
      const double v = d_l(s.P, l, i) - d_y(s.P, l, i) * d_l(s.X, l, i) / xy;
      best = std::min(best, v);
    }
  return best;
}

void rk4_step(const FlowField& u, const FlowField& w, double t, double dt,
              SeedArrays& s) {
  const size_t n = s.X.size();
  static thread_local std::vector<double> kx1, kp1, kx2, kp2, kx3, kp3, xt, pt;
  kx1.resize(n); kp1.resize(n); kx2.resize(n); kp2.resize(n);
  kx3.resize(n); kp3.resize(n); xt.resize(n); pt.resize(n);

  for (size_t i = 0; i < n; ++i) {
    kx1[i] = u(t, s.X[i], s.P[i]);
    kp1[i] = w(t, s.X[i], s.P[i]);
    xt[i] = s.X[i] + 0.5 * dt * kx1[i];
    pt[i] = s.P[i] + 0.5 * dt * kp1[i];
  }
  for (size_t i = 0; i < n; ++i) {
    kx2[i] = u(t + 0.5 * dt, xt[i], pt[i]);
    kp2[i] = w(t + 0.5 * dt, xt[i], pt[i]);
  }
  for (size_t i = 0; i < n; ++i) {
    xt[i] = s.X[i] + 0.5 * dt * kx2[i];
    pt[i] = s.P[i] + 0.5 * dt * kp2[i];
  }
  for (size_t i = 0; i < n; ++i) {
    kx3[i] = u(t + 0.5 * dt, xt[i], pt[i]);
    kp3[i] = w(t + 0.5 * dt, xt[i], pt[i]);
  }
  for (size_t i = 0; i < n; ++i) {
    xt[i] = s.X[i] + dt * kx3[i];
    pt[i] = s.P[i] + dt * kp3[i];
  }
  for (size_t i = 0; i < n; ++i) {
    const double kx4 = u(t + dt, xt[i], pt[i]);
    const double kp4 = w(t + dt, xt[i], pt[i]);
    s.X[i] += dt / 6.0 * (kx1[i] + 2.0 * kx2[i] + 2.0 * kx3[i] + kx4);
    s.P[i] += dt / 6.0 * (kp1[i] + 2.0 * kp2[i] + 2.0 * kp3[i] + kp4);
  }
}

} // namespace

PhiField evolve_phi(const FlowField& u, const FlowField& w,
                    const std::function<double(double, double)>& phi0,
                    double t_end, const PhiGrid& grid,
                    const EvolveOptions& opt) {
  if (!u || !w || !phi0)
    fail(ErrorCode::invalid_argument, "evolve_phi: missing field functions");
  if (grid.n_x < 2 || grid.n_lambda < 2 || grid.n_seeds < 2 ||
      !(grid.x_max > grid.x_min) || !(grid.seed_x_max > grid.seed_x_min))
    fail(ErrorCode::invalid_argument, "evolve_phi: bad grid");
  if (!(opt.dt > 0.0) || t_end < 0.0)
    fail(ErrorCode::invalid_argument, "evolve_phi: bad time parameters");

  SeedArrays s;
  s.ny = grid.n_seeds;
  s.nl = grid.n_lambda;
  s.y.resize(s.ny);
  for (int i = 0; i < s.ny; ++i)
    s.y[i] = grid.seed_x_min +
             (grid.seed_x_max - grid.seed_x_min) * i / (s.ny - 1.0);
  s.lam.resize(s.nl);
  for (int l = 0; l < s.nl; ++l) s.lam[l] = static_cast<double>(l) / (s.nl - 1);
  s.X.resize(static_cast<size_t>(s.ny) * s.nl);
  s.P.resize(s.X.size());
  for (int l = 0; l < s.nl; ++l)
    for (int i = 0; i < s.ny; ++i) {
      s.x_at(l, i) = s.y[i];
      s.p_at(l, i) = phi0(s.y[i], s.lam[l]);
    }

  // precondition: phi0 strictly increasing in lambda on the seed grid
  {
    const double d0 = min_dlambda_phi(s);
    if (d0 <= opt.blowup_floor)
      fail(ErrorCode::invalid_argument,
           "evolve_phi: initial surface violates d_lambda phi0 > 0");
  }

  PhiField out;
  out.min_dlambda_phi = min_dlambda_phi(s);
  double t = 0.0;
  long k = 0;
  bool blown = false;
  while (t < t_end - 1e-14 * (1.0 + t_end)) {
    const double dt = std::min(opt.dt, t_end - t);
    rk4_step(u, w, t, dt, s);
    t += dt;
    ++k;
    const bool last = t >= t_end - 1e-14 * (1.0 + t_end);
    if (k % std::max(1, opt.check_every) == 0 || last) {
      const double d = min_dlambda_phi(s);
      out.min_dlambda_phi = d;
      if (d <= opt.blowup_floor) {
        blown = true;
        out.blowup_time = t;
        break;
      }
    }
  }
  out.time = t;
  out.valid = !blown;

  // resample each lambda row onto the fixed x grid
  out.x.resize(grid.n_x);
  for (int j = 0; j < grid.n_x; ++j)
    out.x[j] = grid.x_min + (grid.x_max - grid.x_min) * j / (grid.n_x - 1.0);
  out.lambda = s.lam;
  out.phi.resize(static_cast<size_t>(s.nl) * grid.n_x);

  std::vector<int> order(s.ny);
  std::vector<double> xs(s.ny), ps(s.ny);
  for (int l = 0; l < s.nl; ++l) {
    for (int i = 0; i < s.ny; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return s.x_at(l, a) < s.x_at(l, b);
    });
    for (int i = 0; i < s.ny; ++i) {
      xs[i] = s.x_at(l, order[i]);
      ps[i] = s.p_at(l, order[i]);
    }
    if (out.x.front() < xs.front() - 1e-12 || out.x.back() > xs.back() + 1e-12)
      fail(ErrorCode::numerical,
           "evolve_phi: characteristics escaped the interpolable region "
           "(row lambda=" + std::to_string(s.lam[l]) +
               " covers [" + std::to_string(xs.front()) + ", " +
               std::to_string(xs.back()) + "])");
    size_t seg = 1;
    for (int j = 0; j < grid.n_x; ++j) {
      const double x = out.x[j];
      while (seg + 1 < xs.size() && xs[seg] < x) ++seg;
      const double x0 = xs[seg - 1], x1 = xs[seg];
      const double tt = x1 > x0 ? (x - x0) / (x1 - x0) : 0.0;
      out.phi[static_cast<size_t>(l) * grid.n_x + j] =
          ps[seg - 1] + std::clamp(tt, 0.0, 1.0) * (ps[seg] - ps[seg - 1]);
    }
  }
  return out;
}

double blowup_time(double a_prime_inf, double eta0) {
  if (!(eta0 > 0.0))
    fail(ErrorCode::invalid_argument, "blowup_time: eta0 must be positive");
  const double worst = std::min(0.0, a_prime_inf);
  if (worst == 0.0) return std::numeric_limits<double>::infinity();
  return 4.0 / (-worst);
}

MappedState map_back(const SimState& state) {
  state.validate();
  MappedState out;
  const int n = state.n_layers, m = state.n_cells;
  out.n_layers = n;
  out.x.resize(m);
  out.eta.resize(m);
  out.interfaces.resize(static_cast<size_t>(n + 1) * m);
  for (int j = 0; j < m; ++j) {
    out.x[j] = state.x_center(j);
    double z = state.zb[j];
    out.interfaces[j] = z;
    for (int alpha = 0; alpha < n; ++alpha) {
      z += state.gamma[alpha] * state.h_at(alpha, j);
      out.interfaces[static_cast<size_t>(alpha + 1) * m + j] = z;
    }
    out.eta[j] = z;
  }
  return out;
}

double MappedState::velocity(const SimState& state, int j, double z) const {
  const int m = static_cast<int>(x.size());
  for (int alpha = 0; alpha < n_layers; ++alpha) {
    if (z <= interfaces[static_cast<size_t>(alpha + 1) * m + j] ||
        alpha == n_layers - 1)
      return state.u_at(alpha, j);
  }
  return state.u_at(n_layers - 1, j);
}

std::vector<double> vorticity_field(const ContinuousProfile& profile, int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "vorticity_field: n < 1");
  std::vector<double> out(n);
  const double dl = 1.0 / (n + 1);
  for (int i = 0; i < n; ++i) {
    const double l = (i + 1) * dl;
    const double du =
        (profile.u(l + 0.5 * dl) - profile.u(l - 0.5 * dl)) / dl;
    out[i] = du / profile.h(l);
  }
  return out;
}

std::vector<double> vorticity_field(const LayerState& layers) {
  const int n = layers.n_layers();
  std::vector<double> out;
  out.reserve(std::max(0, n - 1));
  for (int a = 0; a + 1 < n; ++a) {
    const double dlam = 0.5 * (layers.gamma[a] + layers.gamma[a + 1]);
    const double hbar =
        (layers.gamma[a] * layers.h[a] + layers.gamma[a + 1] * layers.h[a + 1]) /
        (layers.gamma[a] + layers.gamma[a + 1]);
    out.push_back((layers.u[a + 1] - layers.u[a]) / (dlam * hbar));
  }
  return out;
}

} // namespace hydrospec
