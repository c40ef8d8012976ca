#ifndef HYDROSPEC_STATIONARY_HPP
#define HYDROSPEC_STATIONARY_HPP

#include <functional>
#include <vector>

#include "hydrospec/mlsolver.hpp"

namespace hydrospec {

/// Generating data for an exact steady state: u = sqrt(F - G),
/// H = Q / sqrt(F - G) with the induced topography.  When Q is empty the
/// specialization Q = F' is used and everything is closed-form.
struct StationarySpec {
  std::function<double(double)> F;        // increasing on [0,1]
  std::function<double(double)> G;        // of x
  std::function<double(double)> Q;        // optional general form
  std::function<double(double)> F_prime;  // optional analytic derivative
  double gravity = 0.0;
};

struct StationaryGrid {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_x = 64;
  int n_lambda = 33;
};

/// Exact steady fields as callables (positivity of F - G validated on the
/// product grid at construction).
class StationaryFields {
public:
  StationaryFields(StationarySpec spec, StationaryGrid grid);

  double u(double x, double lam) const;
  double H(double x, double lam) const;
  double zb(double x) const;
  double eta(double x) const { return spec_.G(x) / (2.0 * spec_.gravity); }
  double h(double x) const;
  double phi(double x, double lam) const;

  const StationaryGrid& grid() const { return grid_; }
  double gravity() const { return spec_.gravity; }

private:
  double fprime(double lam) const;
  double q_of(double lam) const;
  double sqrt_fg(double x, double lam) const;

  StationarySpec spec_;
  StationaryGrid grid_;
  bool general_q_ = false;
};

StationaryFields build_stationary(StationarySpec spec, StationaryGrid grid);

struct StationarityResidual {
  double drift = 0.0;       // relative L2 drift of (H_alpha, u_alpha) at T
  double mass_drift = 0.0;  // worst relative per-layer mass change
  SimState initial;
  SimState final_state;
};

/// Projects the steady fields to N layers on M cells, runs the solver to
/// time T and reports the drift (G must be periodic on the grid).
StationarityResidual stationarity_residual(const StationaryFields& fields,
                                           int n_layers, int n_cells, double T,
                                           double cfl = 0.9,
                                           bool zero_topography = false);

} // namespace hydrospec

#endif
