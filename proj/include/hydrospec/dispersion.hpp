#ifndef HYDROSPEC_DISPERSION_HPP
#define HYDROSPEC_DISPERSION_HPP

#include <complex>
#include <optional>
#include <vector>

#include "hydrospec/profiles.hpp"

namespace hydrospec {

/// One evaluation of the spectral function F(c) = int g h / (c - u)^2.
struct SpectralFunctionSample {
  std::complex<double> c;
  std::complex<double> value;
  double quadrature_error_estimate = 0.0;
};

/// Spectrum localization data: the discrete spectrum lies in
/// J- u J+ u (rectangle of height sqrt(gh) clipped by the circle spanning
/// the essential hull).
struct LocalizationSets {
  double u_minus = 0.0;
  double u_plus = 0.0;
  double sqrt_gh = 0.0;
  double j_minus_lo = 0.0;  // J- = [u- - sqrt(gh), u-)
  double j_plus_hi = 0.0;   // J+ = (u+, u+ + sqrt(gh)]
  double rect_center = 0.0; // circle/rectangle: center (u-+u+)/2
  double rect_radius = 0.0; // radius (u+-u-)/2
  double rect_height = 0.0; // |Im| <= sqrt(gh)
};

enum class FjortoftClass {
  monotone_vorticity,    // d_lambda(omega) keeps one sign
  single_critical_point, // one zero with d_lambda(omega)*(u-u(lc)) > 0
  neither,
  indeterminate, // hypotheses (strict monotonicity of u) not met
};

struct HyperbolicityPredicates {
  bool holder_half_guarantee = false;
  bool holder_quarter_small_k = false;
  FjortoftClass fjortoft = FjortoftClass::indeterminate;
};

struct RealEigenvaluePair {
  std::optional<double> c_minus;
  std::optional<double> c_plus;
  // limits of F approaching the hull, extrapolated; set when a side stays
  // below 1 so no root exists there
  std::optional<double> f_limit_minus;
  std::optional<double> f_limit_plus;
};

struct ContinuousSpectrumReport {
  RealEigenvaluePair real_roots;
  std::vector<std::complex<double>> imaginary_roots;
  double essential_lo = 0.0;
  double essential_hi = 0.0;
  LocalizationSets localization;
  HyperbolicityPredicates predicates;
  std::vector<double> residuals;  // |F(root)-1| per reported root
};

/// Essential hull [inf u, sup u] from dense sampling plus golden-section
/// refinement (monotone profiles short-circuit to the endpoint values).
std::pair<double, double> essential_hull(const ContinuousProfile& profile);

/// F(c) by adaptive quadrature.  c must lie off the real hull.
SpectralFunctionSample eval_F(const ContinuousProfile& profile,
                              std::complex<double> c);

LocalizationSets localization_sets(const ContinuousProfile& profile);

/// Roots of F(c)=1 on J- and J+ (bisection bracketing plus Newton polish to
/// |F-1| <= 1e-8).  A side is reported absent when F stays (increasingly)
/// below 1 on approach to the hull; the extrapolated limit is then recorded.
RealEigenvaluePair find_real_eigenvalues(const ContinuousProfile& profile);

/// Roots of F(i nu) = 1 for nu in (0, nu_max], valid only for profiles with
/// u odd-symmetric about lambda = 1/2 (checked; refuses otherwise).  Returned
/// with their conjugates.
std::vector<std::complex<double>> scan_imaginary_axis(
    const ContinuousProfile& profile, double nu_max, int samples);

HyperbolicityPredicates hyperbolicity_predicates(
    const ContinuousProfile& profile);

/// Full continuous-spectrum analysis (used by the CLI spectrum command).
/// The imaginary-axis scan runs only when the profile is odd-symmetric.
ContinuousSpectrumReport analyze_continuous_spectrum(
    const ContinuousProfile& profile, double nu_max = 0.0, int samples = 64);

} // namespace hydrospec

#endif
