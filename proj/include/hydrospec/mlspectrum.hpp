#ifndef HYDROSPEC_MLSPECTRUM_HPP
#define HYDROSPEC_MLSPECTRUM_HPP

#include <complex>
#include <optional>
#include <vector>

#include "hydrospec/profiles.hpp"

namespace hydrospec {

/// The 2N x 2N multilayer operator in its secular parametrization: the block
/// matrix [[diag(u), diag(h)], [g 1 (x) gamma, diag(u)]] is never stored;
/// eigenvalues come from sum_i g gamma_i h_i / (u_i - c)^2 = 1 plus the
/// duplicated-velocity rule.
struct MultilayerOperator {
  LayerState layers;
  double gravity = 0.0;
  std::vector<double> g_weights;  // g * gamma_i * h_i

  int n_layers() const { return layers.n_layers(); }
  double depth() const { return layers.depth(); }  // h_N = sum gamma_i h_i
};

MultilayerOperator assemble(const LayerState& layers, double gravity);

/// F_N(c) = sum g gamma_i h_i / (u_i - c)^2.  Exact pole hits are rejected
/// with the offending layer index.
std::complex<double> secular_eval(const MultilayerOperator& op,
                                  std::complex<double> c);

struct DiscreteLocalization {
  double u_minus = 0.0;
  double u_plus = 0.0;
  double sqrt_ghn = 0.0;           // sqrt(g h_N): J± width and disk radius
  std::vector<double> disk_centers; // the layer velocities
};

struct ConditionFlags {
  bool hull_below_sqrt_ghn = false;  // u+ - u- < sqrt(g h_N)
  bool adjacent_gaps_small = false;  // max|u_i-u_{i+1}|^2 < 8g min(gamma_i h_i)
  bool pairwise_separated = false;   // pairwise |u_i-u_j| > 2 sqrt(g h_N)
  std::optional<bool> two_real_only;
  std::optional<bool> strictly_hyperbolic;
};

struct DiscreteSpectrumReport {
  std::vector<std::complex<double>> eigenvalues;  // exactly 2N, sorted
  std::vector<double> residuals;  // |F_N-1| per eigenvalue (0 for duplicates)
  int real_count = 0;
  double c_minus = 0.0;
  double c_plus = 0.0;
  std::vector<double> duplicate_velocity_eigenvalues;
  double max_imag = 0.0;
  DiscreteLocalization localization;
  ConditionFlags condition_flags;
};

/// All 2N eigenvalues: duplicated velocities contribute u* with multiplicity
/// 2(m-1); the remaining roots of the secular equation are found by
/// bracketed bisection (J± and real gap roots) and per-gap complex Newton
/// seeds, with an Aberth-Ehrlich simultaneous iteration as fallback.
/// Classification flags are filled in via classify_conditions.
DiscreteSpectrumReport eigen_all(const MultilayerOperator& op);

/// Only the two guaranteed J± roots (cheaper than eigen_all; used per cell
/// by the Riemann-invariant diagnostics).
std::pair<double, double> secular_extreme_roots(const MultilayerOperator& op);

struct LocalizationCheck {
  bool ok = false;
  double worst_margin = 0.0;  // > 0 means an eigenvalue escapes the sets
  int j_minus_count = 0;
  int j_plus_count = 0;
};

/// True iff every eigenvalue lies in J- u J+ u (union of disks D_i) within
/// 1e-9 and each of J-, J+ contains exactly one eigenvalue.
LocalizationCheck check_localization(const DiscreteSpectrumReport& report,
                                     const MultilayerOperator& op);

/// Evaluates the real-spectrum conditions and asserts the implied structure
/// against the computed report (mismatch is a hard error).
ConditionFlags classify_conditions(const MultilayerOperator& op,
                                   const DiscreteSpectrumReport& report);

struct ConvergenceRow {
  int n_layers = 0;
  double max_imag = 0.0;
  double bound = 0.0;  // (3 g C^3 / N)^{1/4}
  bool within_bound = false;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double c_constant = 0.0;  // max(1, |H|, |H'|, |u|, |u'|) from samples
};

/// Projects the profile at each N (uniform widths), computes the spectrum and
/// compares max |Im c| against the theoretical decay bound.
ConvergenceStudy convergence_study(const ContinuousProfile& profile,
                                   const std::vector<int>& n_list);

} // namespace hydrospec

#endif
