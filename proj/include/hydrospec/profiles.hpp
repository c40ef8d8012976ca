#ifndef HYDROSPEC_PROFILES_HPP
#define HYDROSPEC_PROFILES_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hydrospec {

/// User-asserted regularity metadata.  These are trusted inputs, verified
/// only on a sample grid at construction time; black-box functions cannot be
/// checked exactly.
struct ProfileFlags {
  std::optional<bool> strictly_monotone;
  std::optional<double> holder_exponent;
  std::optional<double> holder_constant;
};

/// Velocity/thickness pair (u(lambda), h(lambda)) on [0,1] plus gravity.
/// Values are immutable after construction and safe to share across threads.
class ContinuousProfile {
public:
  ContinuousProfile(std::function<double(double)> u,
                    std::function<double(double)> h, double gravity,
                    ProfileFlags flags = {});

  double u(double lambda) const { return u_(lambda); }
  double h(double lambda) const { return h_(lambda); }
  double gravity() const { return gravity_; }
  const ProfileFlags& flags() const { return flags_; }

  /// Total depth integral of h over [0,1] (cached at construction).
  double total_depth() const { return total_depth_; }

private:
  std::function<double(double)> u_;
  std::function<double(double)> h_;
  double gravity_;
  ProfileFlags flags_;
  double total_depth_;
};

/// One spatial point of the multilayer model: layer widths gamma (summing to
/// one), per-layer velocities and thicknesses.
struct LayerState {
  std::vector<double> gamma;
  std::vector<double> u;
  std::vector<double> h;

  int n_layers() const { return static_cast<int>(gamma.size()); }

  /// Weighted total depth sum(gamma_i h_i).
  double depth() const;

  /// Validates the invariants (widths positive and summing to 1 within
  /// 1e-14, thicknesses positive, consistent sizes); throws on violation.
  void validate() const;
};

enum class Preset {
  constant,        // params: u0, h0
  affine,          // params: u(0), u(1), h0;  u linear in lambda
  power_quarter,   // params: K;  u = K lambda^{1/4}, h = 1
  tanh_shear,      // params: a, b;  u = a tanh(b(2 lambda - 1)), h = 1/g
  convex_benchmark // params: none;  u = lambda + lambda^2/2, h = 1
};

Preset preset_from_name(const std::string& name);

ContinuousProfile preset_profile(Preset name, std::span<const double> params,
                                 double gravity);

/// Reads a CSV file with header "lambda,u,h" into a piecewise-linear profile.
/// lambda must be strictly increasing with endpoints 0 and 1; h must be
/// positive.
ContinuousProfile load_tabulated(const std::string& path, double gravity);

/// Layer averages (1/gamma_a) int_{L_a} u,h dlambda by adaptive quadrature to
/// relative tolerance 1e-12.
LayerState project_p0(const ContinuousProfile& profile,
                      std::span<const double> gamma);

/// Convenience: uniform widths 1/N.
LayerState project_p0_uniform(const ContinuousProfile& profile, int n_layers);

} // namespace hydrospec

#endif
