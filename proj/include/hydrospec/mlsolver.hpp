#ifndef HYDROSPEC_MLSOLVER_HPP
#define HYDROSPEC_MLSOLVER_HPP

#include <functional>
#include <span>
#include <vector>

#include "hydrospec/profiles.hpp"

namespace hydrospec {

/// Periodic 1D multilayer state: M cells on [0,L), N layers sharing the
/// width vector gamma across cells.  Conserved variables are the layer
/// thickness H and momentum Q = H u, stored row-major [layer * M + cell].
struct SimState {
  int n_layers = 0;
  int n_cells = 0;
  double length = 0.0;
  double gravity = 0.0;
  double time = 0.0;
  std::vector<double> gamma;  // N
  std::vector<double> zb;     // M
  std::vector<double> H;      // N*M
  std::vector<double> Q;      // N*M

  double dx() const { return length / n_cells; }
  double x_center(int j) const { return (j + 0.5) * dx(); }
  double& h_at(int alpha, int j) { return H[static_cast<size_t>(alpha) * n_cells + j]; }
  double h_at(int alpha, int j) const { return H[static_cast<size_t>(alpha) * n_cells + j]; }
  double& q_at(int alpha, int j) { return Q[static_cast<size_t>(alpha) * n_cells + j]; }
  double q_at(int alpha, int j) const { return Q[static_cast<size_t>(alpha) * n_cells + j]; }
  double u_at(int alpha, int j) const { return q_at(alpha, j) / h_at(alpha, j); }

  /// sum_beta gamma_beta H_beta at cell j.
  double depth_at(int j) const;
  /// max_alpha |u| + sqrt(g h_N) at cell j (discrete localization bound).
  double wave_speed_at(int j) const;

  LayerState layer_state_at(int j) const;
  void validate() const;
};

struct Diagnostics {
  double time = 0.0;
  std::vector<double> layer_mass;  // integral of H_alpha dx, per layer
  double energy = 0.0;
  double max_wave_speed = 0.0;
};

/// Builds a state by midpoint cell-averaging in x and P0 layer-averaging in
/// lambda of the given fields.
SimState init_from_profiles(
    const std::function<double(double x, double lam)>& u,
    const std::function<double(double x, double lam)>& H,
    const std::function<double(double x)>& zb, double length, int n_cells,
    std::span<const double> gamma, double gravity);

/// Uniform-width convenience overload.
SimState init_from_profiles_uniform(
    const std::function<double(double x, double lam)>& u,
    const std::function<double(double x, double lam)>& H,
    const std::function<double(double x)>& zb, double length, int n_cells,
    int n_layers, double gravity);

/// One SSP-RK2 step: per-layer Rusanov fluxes for (H, Hu) with the spectral
/// interface speed, centered discretization of the pressure/topography
/// coupling g H d_x(sum gamma H + zb), dt = cfl dx / max wave speed.
/// Returns the step actually taken.  Positivity loss aborts with the
/// offending cell and layer.
double step(SimState& state, double cfl, double dt_cap = 0.0);

Diagnostics diagnostics(const SimState& state);

struct RunResult {
  SimState final_state;
  std::vector<Diagnostics> series;
  std::vector<SimState> snapshots;  // filled when snapshot_every > 0
};

RunResult run(SimState state, double t_end, double cfl,
              int diagnostics_every = 1, int snapshot_every = 0);

struct RiemannResidualReport {
  std::vector<double> field;  // residual per cell at the evaluation frame
  double max_norm = 0.0;
  std::vector<int> flagged_cells;  // cells where c± was not found
};

/// Residual of d_t r± + c± d_x r± with centered differences in x and t,
/// where r± = c± - g sum gamma_i h_i/(u_i - c±) - g zb and c± are the
/// per-cell J± secular roots.  Three consecutive snapshots are required;
/// the middle one is the evaluation frame.
RiemannResidualReport riemann_residual(const SimState& before,
                                       const SimState& at,
                                       const SimState& after, bool plus);

} // namespace hydrospec

#endif
