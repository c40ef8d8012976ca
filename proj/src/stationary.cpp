#include "hydrospec/stationary.hpp"

#include <cmath>

#include "hydrospec/errors.hpp"
#include "hydrospec/quadrature.hpp"

namespace hydrospec {

StationaryFields::StationaryFields(StationarySpec spec, StationaryGrid grid)
    : spec_(std::move(spec)), grid_(grid) {
  if (!spec_.F || !spec_.G)
    fail(ErrorCode::invalid_argument, "stationary: F and G are required");
  if (!(spec_.gravity > 0.0))
    fail(ErrorCode::invalid_argument, "stationary: gravity must be positive");
  general_q_ = static_cast<bool>(spec_.Q);
  // positivity F - G > 0 and (for the Q = F' form) F' > 0 on the grid
  for (int i = 0; i < grid_.n_x; ++i) {
    const double x =
        grid_.x_min + (grid_.x_max - grid_.x_min) * (i + 0.5) / grid_.n_x;
    for (int l = 0; l <= grid_.n_lambda; ++l) {
      const double lam = static_cast<double>(l) / grid_.n_lambda;
      const double d = spec_.F(lam) - spec_.G(x);
      if (!(d > 0.0))
        fail(ErrorCode::invalid_argument,
             "stationary: F - G must be positive (violated at x=" +
                 std::to_string(x) + ", lambda=" + std::to_string(lam) + ")");
      if (!general_q_ && !(fprime(lam) > 0.0))
        fail(ErrorCode::invalid_argument,
             "stationary: F' must be positive for the Q = F' form");
    }
  }
}

double StationaryFields::fprime(double lam) const {
  if (spec_.F_prime) return spec_.F_prime(lam);
  const double d = 1e-6;
  const double lo = std::max(0.0, lam - d), hi = std::min(1.0, lam + d);
  return (spec_.F(hi) - spec_.F(lo)) / (hi - lo);
}

double StationaryFields::q_of(double lam) const {
  return general_q_ ? spec_.Q(lam) : fprime(lam);
}

double StationaryFields::sqrt_fg(double x, double lam) const {
  const double d = spec_.F(lam) - spec_.G(x);
  if (!(d > 0.0))
    fail(ErrorCode::invalid_argument,
         "stationary: F - G must be positive (violated at x=" +
             std::to_string(x) + ", lambda=" + std::to_string(lam) + ")");
  return std::sqrt(d);
}

double StationaryFields::u(double x, double lam) const {
  return sqrt_fg(x, lam);
}

double StationaryFields::H(double x, double lam) const {
  return q_of(lam) / sqrt_fg(x, lam);
}

double StationaryFields::h(double x) const {
  if (!general_q_)
    return 2.0 * sqrt_fg(x, 1.0) - 2.0 * sqrt_fg(x, 0.0);
  const auto q = integrate([&](double l) { return H(x, l); }, 0.0, 1.0,
                           {1e-12, 1e-12, 60});
  return q.value;
}

double StationaryFields::zb(double x) const {
  return spec_.G(x) / (2.0 * spec_.gravity) - h(x);
}

double StationaryFields::phi(double x, double lam) const {
  if (!general_q_)
    return spec_.G(x) / (2.0 * spec_.gravity) + 2.0 * sqrt_fg(x, lam) -
           2.0 * sqrt_fg(x, 1.0);
  const auto q = integrate([&](double l) { return H(x, l); }, 0.0, lam,
                           {1e-12, 1e-12, 60});
  return zb(x) + q.value;
}

StationaryFields build_stationary(StationarySpec spec, StationaryGrid grid) {
  return StationaryFields(std::move(spec), grid);
}

StationarityResidual stationarity_residual(const StationaryFields& fields,
                                           int n_layers, int n_cells, double T,
                                           double cfl, bool zero_topography) {
  const double length = fields.grid().x_max - fields.grid().x_min;
  // the x grid of the solver starts at 0; shift by x_min
  const double x0 = fields.grid().x_min;
  auto uf = [&](double x, double l) { return fields.u(x0 + x, l); };
  auto hf = [&](double x, double l) { return fields.H(x0 + x, l); };
  std::function<double(double)> zf;
  if (zero_topography) zf = [](double) { return 0.0; };
  else zf = [&](double x) { return fields.zb(x0 + x); };

  SimState init = init_from_profiles_uniform(uf, hf, zf, length, n_cells,
                                             n_layers, fields.gravity());
  StationarityResidual out;
  out.initial = init;
  RunResult rr = run(std::move(init), T, cfl);
  out.final_state = std::move(rr.final_state);

  double num_h = 0.0, den_h = 0.0, num_u = 0.0, den_u = 0.0;
  for (int a = 0; a < n_layers; ++a)
    for (int j = 0; j < n_cells; ++j) {
      const double dh = out.final_state.h_at(a, j) - out.initial.h_at(a, j);
      const double du = out.final_state.u_at(a, j) - out.initial.u_at(a, j);
      num_h += dh * dh;
      num_u += du * du;
      den_h += out.initial.h_at(a, j) * out.initial.h_at(a, j);
      den_u += out.initial.u_at(a, j) * out.initial.u_at(a, j);
    }
  out.drift = std::sqrt(num_h / den_h) + std::sqrt(num_u / den_u);

  const Diagnostics d0 = rr.series.front();
  const Diagnostics d1 = rr.series.back();
  for (int a = 0; a < n_layers; ++a)
    out.mass_drift = std::max(
        out.mass_drift, std::fabs(d1.layer_mass[a] - d0.layer_mass[a]) /
                            std::fabs(d0.layer_mass[a]));
  return out;
}

} // namespace hydrospec
