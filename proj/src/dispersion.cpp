#include "hydrospec/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include "hydrospec/errors.hpp"
#include "hydrospec/quadrature.hpp"
#include "hydrospec/rootfind.hpp"

namespace hydrospec {

namespace {

constexpr double kRootResidualTol = 1e-8;
constexpr double kRootLocationTol = 1e-10;
constexpr int kHullSamples = 10000;
constexpr int kDerivGrid = 4096;

double eval_F_real(const ContinuousProfile& p, double c) {
  const double g = p.gravity();
  const auto q = integrate(
      [&](double l) {
        const double d = c - p.u(l);
        return g * p.h(l) / (d * d);
      },
      0.0, 1.0, {1e-13, 1e-11, 60});
  return q.value;
}

double eval_Fprime_real(const ContinuousProfile& p, double c) {
  const double g = p.gravity();
  const auto q = integrate(
      [&](double l) {
        const double d = c - p.u(l);
        return -2.0 * g * p.h(l) / (d * d * d);
      },
      0.0, 1.0, {1e-12, 1e-10, 60});
  return q.value;
}

// Aitken extrapolation of a sequence converging linearly (or faster).
double aitken_limit(const std::vector<double>& v) {
  if (v.size() < 3) return v.back();
  const size_t n = v.size();
  const double x0 = v[n - 3], x1 = v[n - 2], x2 = v[n - 1];
  const double den = x2 - 2.0 * x1 + x0;
  if (std::fabs(den) < 1e-300) return x2;
  const double acc = x2 - (x2 - x1) * (x2 - x1) / den;
  return std::isfinite(acc) ? acc : x2;
}

// Root of F(c)=1 bracketed between `far` (F<1) and the hull endpoint
// `near_hull` (F>1 close to it); dir = +1 approaches from the right of u+,
// dir = -1 from the left of u-.
double polish_root(const ContinuousProfile& p, double lo, double hi) {
  auto f = [&](double c) { return eval_F_real(p, c) - 1.0; };
  auto df = [&](double c) { return eval_Fprime_real(p, c); };
  double x = bisect(f, lo, hi, 1e-6 * (hi - lo) + 1e-14);
  x = newton_safeguarded(f, df, x, lo, hi, kRootResidualTol * 1e-2,
                         kRootLocationTol);
  return x;
}

struct SideResult {
  std::optional<double> root;
  std::optional<double> f_limit;
};

// side = -1: J- = [u- - sqrt(gh), u-);  side = +1: J+ = (u+, u+ + sqrt(gh)].
SideResult find_side_root(const ContinuousProfile& p, double hull_end,
                          double sqrt_gh, int side) {
  const double outer = hull_end + side * sqrt_gh;
  const double f_outer = eval_F_real(p, outer);
  if (std::fabs(f_outer - 1.0) <= 1e-12) {
    // shallow-water endpoint root: F(u0 +/- sqrt(gh)) = 1 exactly
    return {outer, std::nullopt};
  }
  // probe the hull endpoint with geometrically shrinking offsets
  std::vector<double> probes;
  bool bracketed = false;
  double inner = outer;
  int k0 = 2;
  while (std::pow(10.0, -k0) > 0.5 * sqrt_gh) ++k0;
  for (int k = k0; k <= 8; ++k) {
    const double c = hull_end + side * std::pow(10.0, -k);
    const double fc = eval_F_real(p, c);
    if (fc >= 1.0) {
      bracketed = true;
      inner = c;
      break;
    }
    probes.push_back(fc);
  }
  if (bracketed) {
    const double lo = side < 0 ? outer : inner;
    const double hi = side < 0 ? inner : outer;
    return {polish_root(p, lo, hi), std::nullopt};
  }
  // F stays below 1 approaching the hull: no root on this side (limit is
  // finite, e.g. 2g/K^2 for the quarter-power family).  The probe sequence
  // must be increasing toward the limit for the declaration to be sound.
  for (size_t i = 1; i < probes.size(); ++i)
    if (probes[i] < probes[i - 1] - 1e-12)
      fail(ErrorCode::numerical,
           "find_real_eigenvalues: non-monotone approach to the hull "
           "endpoint; cannot classify the root as absent");
  return {std::nullopt, aitken_limit(probes)};
}

bool odd_symmetric(const ContinuousProfile& p) {
  double scale = 0.0, worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double l = static_cast<double>(i) / 1000.0;
    const double a = p.u(l), b = p.u(1.0 - l);
    scale = std::max(scale, std::fabs(a));
    worst = std::max(worst, std::fabs(a + b));
  }
  return worst <= 1e-10 * std::max(1.0, scale);
}

} // namespace

std::pair<double, double> essential_hull(const ContinuousProfile& profile) {
  if (profile.flags().strictly_monotone.value_or(false)) {
    const double a = profile.u(0.0), b = profile.u(1.0);
    return {std::min(a, b), std::max(a, b)};
  }
  double lo = profile.u(0.0), hi = lo;
  int ilo = 0, ihi = 0;
  for (int i = 1; i <= kHullSamples; ++i) {
    const double v = profile.u(static_cast<double>(i) / kHullSamples);
    if (v < lo) { lo = v; ilo = i; }
    if (v > hi) { hi = v; ihi = i; }
  }
  auto refine = [&](int i, double sign) {
    const double a = std::max(0.0, (i - 1.0) / kHullSamples);
    const double b = std::min(1.0, (i + 1.0) / kHullSamples);
    const double lam = golden_min(
        [&](double l) { return sign * profile.u(l); }, a, b, 1e-12);
    return profile.u(lam);
  };
  lo = std::min(lo, refine(ilo, +1.0));
  hi = std::max(hi, refine(ihi, -1.0));
  return {lo, hi};
}

SpectralFunctionSample eval_F(const ContinuousProfile& profile,
                              std::complex<double> c) {
  const auto [lo, hi] = essential_hull(profile);
  if (c.imag() == 0.0 && c.real() >= lo && c.real() <= hi)
    fail(ErrorCode::domain,
         "eval_F: essential-range evaluation (c inside [" +
             std::to_string(lo) + ", " + std::to_string(hi) +
             "] on the real axis)");
  const double g = profile.gravity();
  const auto q = integrate_complex(
      [&](double l) {
        const std::complex<double> d = c - profile.u(l);
        return g * profile.h(l) / (d * d);
      },
      0.0, 1.0, {1e-14, 1e-12, 60});
  if (!q.converged)
    fail(ErrorCode::numerical,
         "eval_F: quadrature did not converge (worst point " +
             std::to_string(q.worst_point) + ")");
  return {c, q.value, q.error_estimate};
}

LocalizationSets localization_sets(const ContinuousProfile& profile) {
  const auto [lo, hi] = essential_hull(profile);
  LocalizationSets s;
  s.u_minus = lo;
  s.u_plus = hi;
  s.sqrt_gh = std::sqrt(profile.gravity() * profile.total_depth());
  s.j_minus_lo = lo - s.sqrt_gh;
  s.j_plus_hi = hi + s.sqrt_gh;
  s.rect_center = 0.5 * (lo + hi);
  s.rect_radius = 0.5 * (hi - lo);
  s.rect_height = s.sqrt_gh;
  return s;
}

RealEigenvaluePair find_real_eigenvalues(const ContinuousProfile& profile) {
  const auto [lo, hi] = essential_hull(profile);
  const double sqrt_gh =
      std::sqrt(profile.gravity() * profile.total_depth());
  RealEigenvaluePair out;
  const SideResult left = find_side_root(profile, lo, sqrt_gh, -1);
  const SideResult right = find_side_root(profile, hi, sqrt_gh, +1);
  out.c_minus = left.root;
  out.f_limit_minus = left.f_limit;
  out.c_plus = right.root;
  out.f_limit_plus = right.f_limit;
  return out;
}

std::vector<std::complex<double>> scan_imaginary_axis(
    const ContinuousProfile& profile, double nu_max, int samples) {
  if (!(nu_max > 0.0) || samples < 2)
    fail(ErrorCode::invalid_argument,
         "scan_imaginary_axis: need nu_max > 0 and samples >= 2");
  if (!odd_symmetric(profile))
    fail(ErrorCode::domain,
         "scan_imaginary_axis: profile velocity is not odd-symmetric about "
         "lambda = 1/2; the imaginary-axis scan is only valid for that "
         "family");
  auto re_F = [&](double nu) {
    return eval_F(profile, {0.0, nu}).value.real() - 1.0;
  };
  std::vector<std::complex<double>> roots;
  double prev_nu = nu_max / samples * 1e-3;  // start just above zero
  double prev_v = re_F(prev_nu);
  for (int i = 1; i <= samples; ++i) {
    const double nu = nu_max * static_cast<double>(i) / samples;
    const double v = re_F(nu);
    if ((prev_v > 0.0) != (v > 0.0) || v == 0.0) {
      double r = bisect(re_F, prev_nu, nu, 1e-13);
      // Newton polish on Re F(i nu) - 1 with a finite-difference slope
      for (int it = 0; it < 8; ++it) {
        const double f0 = re_F(r);
        if (std::fabs(f0) <= kRootResidualTol * 1e-2) break;
        const double dr = std::max(1e-9, 1e-7 * r);
        const double d = (re_F(r + dr) - re_F(r - dr)) / (2.0 * dr);
        if (d == 0.0) break;
        const double rn = r - f0 / d;
        if (rn <= prev_nu || rn >= nu) break;
        r = rn;
      }
      roots.push_back({0.0, r});
      roots.push_back({0.0, -r});
    }
    prev_nu = nu;
    prev_v = v;
  }
  return roots;
}

HyperbolicityPredicates hyperbolicity_predicates(
    const ContinuousProfile& profile) {
  HyperbolicityPredicates out;
  const auto& fl = profile.flags();
  if (fl.holder_exponent) {
    out.holder_half_guarantee = *fl.holder_exponent >= 0.5;
    if (*fl.holder_exponent == 0.25 && fl.holder_constant) {
      double inf_h = profile.h(0.0);
      for (int i = 1; i <= 1000; ++i)
        inf_h = std::min(inf_h, profile.h(i / 1000.0));
      out.holder_quarter_small_k =
          *fl.holder_constant < std::sqrt(2.0 * profile.gravity() * inf_h);
    }
  }

  // Fjortoft-like classification on sampled vorticity omega = u' / h.
  const int n = kDerivGrid;
  const double dl = 1.0 / (n + 1);
  std::vector<double> lam(n), omega(n), u(n);
  int mono_sign = 0;
  bool monotone = true;
  for (int i = 0; i < n; ++i) {
    lam[i] = (i + 1) * dl;
    const double du =
        (profile.u(lam[i] + 0.5 * dl) - profile.u(lam[i] - 0.5 * dl)) / dl;
    u[i] = profile.u(lam[i]);
    omega[i] = du / profile.h(lam[i]);
    if (du != 0.0) {
      const int s = du > 0.0 ? 1 : -1;
      if (mono_sign == 0) mono_sign = s;
      else if (s != mono_sign) monotone = false;
    } else {
      monotone = false;
    }
  }
  if (!monotone) {
    out.fjortoft = FjortoftClass::indeterminate;
    return out;
  }

  std::vector<double> domega(n - 2);
  double scale = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    domega[i - 1] = (omega[i + 1] - omega[i - 1]) / (2.0 * dl);
    scale = std::max(scale, std::fabs(domega[i - 1]));
  }
  const double zero_band = 1e-9 * std::max(1.0, scale);
  std::vector<int> crossings;
  for (size_t i = 1; i < domega.size(); ++i) {
    if ((domega[i - 1] > zero_band && domega[i] < -zero_band) ||
        (domega[i - 1] < -zero_band && domega[i] > zero_band))
      crossings.push_back(static_cast<int>(i));
  }
  if (crossings.empty()) {
    bool nonzero = true;
    for (double v : domega)
      if (std::fabs(v) <= zero_band) { nonzero = false; break; }
    out.fjortoft = nonzero ? FjortoftClass::monotone_vorticity
                           : FjortoftClass::neither;
    return out;
  }
  if (crossings.size() == 1) {
    const int ic = crossings[0];
    const double u_c = 0.5 * (u[ic] + u[ic + 1]);
    bool ok = true;
    for (size_t i = 0; i < domega.size(); ++i) {
      if (std::abs(static_cast<int>(i) - ic) <= 2) continue;
      if (domega[i] * (u[i + 1] - u_c) <= 0.0) { ok = false; break; }
    }
    out.fjortoft = ok ? FjortoftClass::single_critical_point
                      : FjortoftClass::neither;
    return out;
  }
  out.fjortoft = FjortoftClass::neither;
  return out;
}

ContinuousSpectrumReport analyze_continuous_spectrum(
    const ContinuousProfile& profile, double nu_max, int samples) {
  ContinuousSpectrumReport rep;
  const auto [lo, hi] = essential_hull(profile);
  rep.essential_lo = lo;
  rep.essential_hi = hi;
  rep.localization = localization_sets(profile);
  rep.real_roots = find_real_eigenvalues(profile);
  rep.predicates = hyperbolicity_predicates(profile);
  if (odd_symmetric(profile)) {
    const double span =
        nu_max > 0.0 ? nu_max : rep.localization.sqrt_gh;
    rep.imaginary_roots = scan_imaginary_axis(profile, span, samples);
  }
  auto push_residual = [&](std::complex<double> c) {
    rep.residuals.push_back(std::abs(eval_F(profile, c).value - 1.0));
  };
  if (rep.real_roots.c_minus) push_residual({*rep.real_roots.c_minus, 0.0});
  if (rep.real_roots.c_plus) push_residual({*rep.real_roots.c_plus, 0.0});
  for (auto r : rep.imaginary_roots) push_residual(r);
  return rep;
}

} // namespace hydrospec
