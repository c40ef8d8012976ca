#ifndef HYDROSPEC_LAGRANGIAN_HPP
#define HYDROSPEC_LAGRANGIAN_HPP

#include <functional>
#include <limits>
#include <vector>

#include "hydrospec/mlsolver.hpp"

namespace hydrospec {

/// (t, x, z) -> value; prescribed velocity fields for the characteristics.
using FlowField = std::function<double(double, double, double)>;

struct PhiGrid {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_x = 101;     // fixed output grid (x_min..x_max inclusive)
  int n_lambda = 101;
  // characteristic seeds cover [seed_x_min, seed_x_max]; they must keep the
  // output grid inside their convex hull for resampling to be possible
  double seed_x_min = 0.0;
  double seed_x_max = 1.0;
  int n_seeds = 401;
};

/// The change-of-variable surface sampled on the fixed (x, lambda) grid.
struct PhiField {
  std::vector<double> x;       // n_x
  std::vector<double> lambda;  // n_lambda
  std::vector<double> phi;     // n_lambda * n_x, [l * n_x + j]
  double time = 0.0;
  bool valid = true;
  double min_dlambda_phi = 0.0;
  // first time min d_lambda phi fell below the blow-up floor (NaN if never)
  double blowup_time = std::numeric_limits<double>::quiet_NaN();

  double at(int l, int j) const { return phi[static_cast<size_t>(l) * x.size() + j]; }
};

struct EvolveOptions {
  double dt = 1e-3;
  int check_every = 5;            // monotonicity monitor cadence, in steps
  double blowup_floor = 1e-6;     // epsilon on d_lambda phi
};

/// Integrates the characteristic system dX/dt = u(t,X,Phi), dPhi/dt =
/// w(t,X,Phi) with RK4 from seeds (y, lambda), monitoring d_lambda phi via
/// the chain rule on the seed grid.  When the minimum crosses the blow-up
/// floor the field is returned at that time with valid=false.  The result is
/// resampled onto the fixed x grid by monotone (piecewise-linear)
/// interpolation along each lambda row.
PhiField evolve_phi(const FlowField& u, const FlowField& w,
                    const std::function<double(double x, double lam)>& phi0,
                    double t_end, const PhiGrid& grid,
                    const EvolveOptions& opt = {});

/// Blow-up time of the Burgers-type example: T = 4 / (-inf a') for
/// inf a' < 0 (the lambda(1-lambda) factor is extremal at 1/2), infinity
/// otherwise.
double blowup_time(double a_prime_inf, double eta0);

/// Physical-domain picture of a multilayer state: free surface, moving-layer
/// interfaces, and the piecewise-constant horizontal velocity.
struct MappedState {
  std::vector<double> x;           // M cell centers
  std::vector<double> eta;         // M
  std::vector<double> interfaces;  // (N+1) * M, [k * M + j], k=0 is zb
  int n_layers = 0;

  /// u(x_j, z): the velocity of the layer whose moving band contains z.
  double velocity(const SimState& state, int j, double z) const;
};

MappedState map_back(const SimState& state);

/// Vorticity samples omega = d_lambda u / h for a continuous profile
/// (central differences) at n interior points.
std::vector<double> vorticity_field(const ContinuousProfile& profile, int n);

/// Discrete vorticity at the N-1 interior interfaces of one cell:
/// forward differences of u divided by the width-weighted thickness.
std::vector<double> vorticity_field(const LayerState& layers);

} // namespace hydrospec

#endif
