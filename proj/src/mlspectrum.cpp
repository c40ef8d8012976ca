#include "hydrospec/mlspectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hydrospec/errors.hpp"

namespace hydrospec {

namespace {

using cplx = std::complex<double>;

constexpr double kResidualTol = 1e-8;
constexpr double kDuplicateTol = 1e-12;

// Distinct velocities with merged weights, sorted ascending.
struct Reduced {
  std::vector<double> v;  // K distinct velocities
  std::vector<double> G;  // summed g gamma h per group
  std::vector<double> duplicates;  // u* repeated 2(m-1) times
};

Reduced reduce(const MultilayerOperator& op) {
  const int n = op.n_layers();
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return op.layers.u[a] < op.layers.u[b];
  });
  Reduced r;
  for (int t = 0; t < n;) {
    const double u0 = op.layers.u[idx[t]];
    double w = 0.0;
    int m = 0;
    double vmean = 0.0;
    while (t < n) {
      const double ui = op.layers.u[idx[t]];
      if (std::fabs(ui - u0) > kDuplicateTol * std::max(1.0, std::fabs(u0)))
        break;
      w += op.g_weights[idx[t]];
      vmean += ui;
      ++m;
      ++t;
    }
    vmean /= m;
    r.v.push_back(vmean);
    r.G.push_back(w);
    for (int k = 0; k < 2 * (m - 1); ++k) r.duplicates.push_back(vmean);
  }
  return r;
}

double FN(const Reduced& r, double c) {
  double s = 0.0;
  for (size_t k = 0; k < r.v.size(); ++k) {
    const double d = r.v[k] - c;
    s += r.G[k] / (d * d);
  }
  return s;
}

cplx FN(const Reduced& r, cplx c) {
  cplx s = 0.0;
  for (size_t k = 0; k < r.v.size(); ++k) {
    const cplx d = r.v[k] - c;
    s += r.G[k] / (d * d);
  }
  return s;
}

double FNp(const Reduced& r, double c) {  // d/dc F_N
  double s = 0.0;
  for (size_t k = 0; k < r.v.size(); ++k) {
    const double d = r.v[k] - c;
    s += 2.0 * r.G[k] / (d * d * d);
  }
  return s;
}

cplx FNp(const Reduced& r, cplx c) {
  cplx s = 0.0;
  for (size_t k = 0; k < r.v.size(); ++k) {
    const cplx d = r.v[k] - c;
    s += 2.0 * r.G[k] / (d * d * d);
  }
  return s;
}

double FNpp(const Reduced& r, double c) {
  double s = 0.0;
  for (size_t k = 0; k < r.v.size(); ++k) {
    const double d = r.v[k] - c;
    const double d2 = d * d;
    s += 6.0 * r.G[k] / (d2 * d2);
  }
  return s;
}

// Bisection for F_N(c) = 1 on [lo, hi] where F(lo)-1 and F(hi)-1 have known
// opposite signs, followed by Newton polish.
double secular_root(const Reduced& r, double lo, double hi, bool f_lo_above) {
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::fabs(lo)); ++it) {
    const double m = 0.5 * (lo + hi);
    const bool above = FN(r, m) > 1.0;
    if (above == f_lo_above) lo = m;
    else hi = m;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double f = FN(r, x) - 1.0;
    if (std::fabs(f) <= 1e-14) break;
    const double d = FNp(r, x);
    if (d == 0.0) break;
    const double xn = x - f / d;
    if (!(xn > lo - 1e-12 && xn < hi + 1e-12)) break;
    if (xn == x) break;
    x = xn;
  }
  return x;
}

// Interior minimum of the (strictly convex) restriction of F_N to the open
// gap (va, vb): bisection on F_N' with analytically known endpoint signs.
double gap_minimum(const Reduced& r, double va, double vb) {
  double lo = va, hi = vb;  // F' < 0 near va+, > 0 near vb-
  for (int it = 0; it < 100 && hi - lo > 1e-16 * (1.0 + std::fabs(va)); ++it) {
    const double m = 0.5 * (lo + hi);
    if (FNp(r, m) < 0.0) lo = m;
    else hi = m;
  }
  return 0.5 * (lo + hi);
}

// Find a point between the pole at v (approached geometrically) and c_far
// where F_N > 1; F_N -> +infinity at the pole so this terminates.
double approach_pole(const Reduced& r, double v, double c_far) {
  double t = 0.5;
  for (int it = 0; it < 200; ++it, t *= 0.5) {
    const double c = v + t * (c_far - v);
    if (FN(r, c) > 1.0) return c;
  }
  fail(ErrorCode::internal, "secular solver: pole approach failed");
}

// log-derivative P'(c)/P(c) of the characteristic polynomial
// P(c) = prod (v_k - c)^2 (1 - F_N(c)), evaluated implicitly.
cplx log_deriv(const Reduced& r, cplx c) {
  cplx s = 0.0;
  for (double vk : r.v) s += -2.0 / (vk - c);
  const cplx T = 1.0 - FN(r, c);
  const cplx Tp = -FNp(r, c);
  return s + Tp / T;
}

// Aberth-Ehrlich simultaneous iteration for the conjugate pairs: the
// iterates z live in the upper half plane, each repelled by the other
// unknowns, by all mirror conjugates (its own included) and by the frozen
// real roots.  Returns false if the sweep budget runs out.
bool aberth_pairs(const Reduced& r, std::vector<cplx>& z,
                  const std::vector<double>& frozen) {
  const size_t nr = z.size();
  double worst = 1.0;
  for (int sweep = 0; sweep < 600; ++sweep) {
    worst = 0.0;
    for (size_t i = 0; i < nr; ++i) {
      for (double vk : r.v)
        if (std::abs(z[i] - vk) < 1e-13 * (1.0 + std::fabs(vk)))
          z[i] += cplx(0.0, 1e-9);
      if (z[i].imag() <= 0.0) z[i] = {z[i].real(), 1e-12};
      cplx rep = 1.0 / (z[i] - std::conj(z[i]));  // own mirror
      for (size_t j = 0; j < nr; ++j) {
        if (j != i) rep += 1.0 / (z[i] - z[j]);
        rep += 1.0 / (z[i] - std::conj(z[j]));
      }
      for (double f : frozen) rep += 1.0 / (z[i] - f);
      const cplx den = log_deriv(r, z[i]) - rep;
      if (den == cplx(0.0) || !std::isfinite(den.real()) ||
          !std::isfinite(den.imag()))
        continue;
      const cplx w = 1.0 / den;
      z[i] -= w;
      if (z[i].imag() < 0.0) z[i] = std::conj(z[i]);
      worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[i])));
    }
    if (worst < 1e-14) return true;
  }
  return worst < 1e-10;
}

// Newton polish on the secular form; returns nullopt if it does not settle.
std::optional<cplx> complex_newton(const Reduced& r, cplx z) {
  for (int it = 0; it < 100; ++it) {
    const cplx f = FN(r, z) - 1.0;
    if (std::abs(f) <= 1e-13) return z;
    const cplx d = FNp(r, z);
    if (d == cplx(0.0)) return std::nullopt;
    const cplx zn = z - f / d;
    if (std::abs(zn - z) <= 1e-16 * (1.0 + std::abs(z))) {
      z = zn;
      break;
    }
    z = zn;
  }
  if (std::abs(FN(r, z) - 1.0) <= 1e-10) return z;
  return std::nullopt;
}

std::vector<cplx> solve_secular(const Reduced& r, double sqrt_ghn,
                                double* c_minus, double* c_plus) {
  const size_t K = r.v.size();
  std::vector<cplx> roots;

  // J- root: F(u- - sqrt(ghn)) <= 1, F -> infinity at u-.
  {
    const double outer = r.v.front() - sqrt_ghn;
    const double f_outer = FN(r, outer);
    double root;
    if (f_outer >= 1.0 - 1e-14) {
      root = outer;  // shallow-water endpoint case (F = 1 exactly there)
    } else {
      const double inner = approach_pole(r, r.v.front(), outer);
      root = secular_root(r, outer, inner, false);
    }
    *c_minus = root;
    roots.push_back(root);
  }
  // J+ root.
  {
    const double outer = r.v.back() + sqrt_ghn;
    const double f_outer = FN(r, outer);
    double root;
    if (f_outer >= 1.0 - 1e-14) {
      root = outer;
    } else {
      const double inner = approach_pole(r, r.v.back(), outer);
      root = secular_root(r, inner, outer, true);
    }
    *c_plus = root;
    roots.push_back(root);
  }

  // Real roots are complete after the gap sweep: F_N restricted to a real
  // gap is strictly convex, so each gap holds two, one (tangency) or zero
  // real roots according to the sign of its minimum against 1.  The
  // remaining eigenvalues are conjugate pairs, exactly one per gap whose
  // minimum stays above 1.
  std::vector<cplx> seeds;
  for (size_t k = 0; k + 1 < K; ++k) {
    const double va = r.v[k], vb = r.v[k + 1];
    const double cstar = gap_minimum(r, va, vb);
    const double mu = FN(r, cstar);
    if (mu < 1.0 - 1e-12) {
      const double left = approach_pole(r, va, cstar);
      roots.push_back(secular_root(r, left, cstar, true));
      const double right = approach_pole(r, vb, cstar);
      roots.push_back(secular_root(r, cstar, right, false));
    } else if (mu <= 1.0 + 1e-12) {
      roots.push_back(cstar);  // double root at the tangency
      roots.push_back(cstar);
    } else {
      // quadratic model of the convex minimum gives the pair seed
      const double curv = FNpp(r, cstar);
      seeds.push_back(cplx(cstar, std::sqrt(2.0 * (mu - 1.0) / curv)));
    }
  }

  if (!seeds.empty()) {
    std::vector<double> frozen;
    for (const auto& z : roots) frozen.push_back(z.real());
    std::vector<cplx> pairs = seeds;
    bool ok = aberth_pairs(r, pairs, frozen);
    if (ok) {
      // Newton polish and sanity: distinct, upper half plane, small residual
      for (auto& z : pairs) {
        const auto p = complex_newton(r, z);
        if (!p || p->imag() <= 0.0) {
          ok = false;
          break;
        }
        z = *p;
      }
      for (size_t i = 0; ok && i < pairs.size(); ++i)
        for (size_t j = i + 1; j < pairs.size(); ++j)
          if (std::abs(pairs[i] - pairs[j]) <
              1e-9 * (1.0 + std::abs(pairs[i])))
            ok = false;
    }
    if (!ok) {
      // restart from scratch with dispersed seeds
      pairs = seeds;
      const double span = r.v.back() - r.v.front() + 1.0;
      for (size_t i = 0; i < pairs.size(); ++i)
        pairs[i] += cplx(0.0, 1e-3 + span * 0.05 * (i + 1.0) / pairs.size());
      std::vector<double> frozen2;
      for (const auto& z : roots) frozen2.push_back(z.real());
      if (!aberth_pairs(r, pairs, frozen2))
        fail(ErrorCode::internal,
             "secular solver: simultaneous iteration did not converge");
      for (auto& z : pairs) {
        const auto p = complex_newton(r, z);
        if (p && p->imag() > 0.0) z = *p;
      }
    }
    for (const auto& z : pairs) {
      roots.push_back(z);
      roots.push_back(std::conj(z));
    }
  }
  return roots;
}

} // namespace

MultilayerOperator assemble(const LayerState& layers, double gravity) {
  layers.validate();
  if (!(gravity > 0.0))
    fail(ErrorCode::invalid_argument, "assemble: gravity must be positive");
  MultilayerOperator op;
  op.layers = layers;
  op.gravity = gravity;
  op.g_weights.resize(layers.gamma.size());
  for (size_t i = 0; i < layers.gamma.size(); ++i)
    op.g_weights[i] = gravity * layers.gamma[i] * layers.h[i];
  return op;
}

std::complex<double> secular_eval(const MultilayerOperator& op,
                                  std::complex<double> c) {
  cplx s = 0.0;
  for (int i = 0; i < op.n_layers(); ++i) {
    const cplx d = op.layers.u[i] - c;
    if (d == cplx(0.0))
      fail(ErrorCode::domain,
           "secular_eval: c coincides with the velocity of layer " +
               std::to_string(i));
    s += op.g_weights[i] / (d * d);
  }
  return s;
}

DiscreteSpectrumReport eigen_all(const MultilayerOperator& op) {
  const int n = op.n_layers();
  if (n <= 0) fail(ErrorCode::invalid_argument, "eigen_all: empty operator");
  const Reduced r = reduce(op);
  const double h_n = op.depth();
  const double sqrt_ghn = std::sqrt(op.gravity * h_n);

  DiscreteSpectrumReport rep;
  rep.localization.u_minus = r.v.front();
  rep.localization.u_plus = r.v.back();
  rep.localization.sqrt_ghn = sqrt_ghn;
  rep.localization.disk_centers = op.layers.u;
  rep.duplicate_velocity_eigenvalues = r.duplicates;

  std::vector<cplx> roots;
  if (r.v.size() == 1) {
    // shallow-water reduction: (v - c)^2 = g h_N
    rep.c_minus = r.v[0] - sqrt_ghn;
    rep.c_plus = r.v[0] + sqrt_ghn;
    roots = {rep.c_minus, rep.c_plus};
  } else {
    roots = solve_secular(r, sqrt_ghn, &rep.c_minus, &rep.c_plus);
  }

  for (double d : r.duplicates) roots.push_back(d);
  if (roots.size() != static_cast<size_t>(2 * n))
    fail(ErrorCode::internal,
         "eigen_all: root count mismatch (" + std::to_string(roots.size()) +
             " vs " + std::to_string(2 * n) + ")");

  std::sort(roots.begin(), roots.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  rep.eigenvalues = std::move(roots);

  rep.residuals.resize(rep.eigenvalues.size(), 0.0);
  const double dup_band = 10.0 * kDuplicateTol;
  for (size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    const cplx c = rep.eigenvalues[i];
    bool is_dup = false;
    for (double d : r.duplicates)
      if (std::abs(c - d) <= dup_band * (1.0 + std::fabs(d))) is_dup = true;
    if (!is_dup) rep.residuals[i] = std::abs(FN(r, c) - 1.0);
    if (c.imag() == 0.0) ++rep.real_count;
    rep.max_imag = std::max(rep.max_imag, std::fabs(c.imag()));
  }
  for (size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    const double res = rep.residuals[i];
    if (res <= kResidualTol) continue;
    // Roots crowding a pole of F_N have |F'| ~ 1/dist^3, so the residual
    // cannot reach an absolute tolerance in double precision even when the
    // root location is exact to rounding; accept when the Newton step
    // (backward location error) is at rounding level.
    const cplx c = rep.eigenvalues[i];
    const double slope = std::abs(FNp(r, c));
    if (res > 1e-12 * (1.0 + std::abs(c)) * slope)
      fail(ErrorCode::internal, "eigen_all: root residual " +
                                    std::to_string(res) +
                                    " exceeds tolerance");
  }

  rep.condition_flags = classify_conditions(op, rep);
  return rep;
}

std::pair<double, double> secular_extreme_roots(const MultilayerOperator& op) {
  const Reduced r = reduce(op);
  const double sqrt_ghn = std::sqrt(op.gravity * op.depth());
  if (r.v.size() == 1)
    return {r.v[0] - sqrt_ghn, r.v[0] + sqrt_ghn};
  double cm, cp;
  {
    const double outer = r.v.front() - sqrt_ghn;
    if (FN(r, outer) >= 1.0 - 1e-14) cm = outer;
    else cm = secular_root(r, outer, approach_pole(r, r.v.front(), outer), false);
  }
  {
    const double outer = r.v.back() + sqrt_ghn;
    if (FN(r, outer) >= 1.0 - 1e-14) cp = outer;
    else cp = secular_root(r, approach_pole(r, r.v.back(), outer), outer, true);
  }
  return {cm, cp};
}

LocalizationCheck check_localization(const DiscreteSpectrumReport& report,
                                     const MultilayerOperator& op) {
  const double tol = 1e-9;
  const Reduced r = reduce(op);
  const double um = r.v.front(), up = r.v.back();
  const double s = std::sqrt(op.gravity * op.depth());
  LocalizationCheck out;
  out.worst_margin = -1e300;
  for (const auto& z : report.eigenvalues) {
    // signed distances: <= 0 means inside
    double m_jm = std::max({std::fabs(z.imag()), (um - s) - z.real(),
                            z.real() - um});
    double m_jp = std::max({std::fabs(z.imag()), up - z.real(),
                            z.real() - (up + s)});
    double m_disk = 1e300;
    for (double ui : op.layers.u) {
      const double d = std::max({std::abs(z - ui) - s, um - z.real(),
                                 z.real() - up});
      m_disk = std::min(m_disk, d);
    }
    const double margin = std::min({m_jm, m_jp, m_disk});
    out.worst_margin = std::max(out.worst_margin, margin);
    if (std::fabs(z.imag()) <= tol) {
      if (z.real() >= um - s - tol && z.real() < um) ++out.j_minus_count;
      if (z.real() > up && z.real() <= up + s + tol) ++out.j_plus_count;
    }
  }
  out.ok = out.worst_margin <= tol && out.j_minus_count == 1 &&
           out.j_plus_count == 1;
  return out;
}

ConditionFlags classify_conditions(const MultilayerOperator& op,
                                   const DiscreteSpectrumReport& report) {
  const Reduced r = reduce(op);
  const double sqrt_ghn = std::sqrt(op.gravity * op.depth());
  ConditionFlags f;
  f.hull_below_sqrt_ghn = (r.v.back() - r.v.front()) < sqrt_ghn;

  // sorted adjacent velocity gaps vs layer weights
  std::vector<double> su = op.layers.u;
  std::sort(su.begin(), su.end());
  double max_gap2 = 0.0;
  for (size_t i = 0; i + 1 < su.size(); ++i)
    max_gap2 = std::max(max_gap2, (su[i + 1] - su[i]) * (su[i + 1] - su[i]));
  double min_gh = 1e300;
  for (size_t i = 0; i < op.layers.gamma.size(); ++i)
    min_gh = std::min(min_gh, op.layers.gamma[i] * op.layers.h[i]);
  f.adjacent_gaps_small =
      op.n_layers() > 1 && max_gap2 < 8.0 * op.gravity * min_gh;

  // Pairwise separation guaranteeing 2N distinct real eigenvalues.  The
  // midpoint argument needs |u_i - u_j| > 2 sqrt(g h_N): with the literal
  // sqrt(g h_N) threshold, u = (0,4), g h_N = 10 is a counterexample (its
  // spectrum has a conjugate pair), so the factor-2 version is used here.
  bool sep = r.duplicates.empty() && op.n_layers() > 1;
  for (size_t i = 0; i + 1 < su.size() && sep; ++i)
    if (su[i + 1] - su[i] <= 2.0 * sqrt_ghn) sep = false;
  f.pairwise_separated = sep;

  // assert the implied structure against the computed spectrum
  int nonreal = 0, real_nondup = 0;
  for (const auto& z : report.eigenvalues) {
    if (z.imag() != 0.0) ++nonreal;
  }
  real_nondup = static_cast<int>(report.eigenvalues.size()) - nonreal -
                static_cast<int>(report.duplicate_velocity_eigenvalues.size());
  if (f.hull_below_sqrt_ghn || f.adjacent_gaps_small) {
    const bool ok = real_nondup == 2;
    if (!ok)
      fail(ErrorCode::internal,
           "classify_conditions: two-real-only condition holds but the "
           "computed spectrum has " + std::to_string(real_nondup) +
               " non-duplicate real eigenvalues");
    f.two_real_only = true;
  }
  if (f.pairwise_separated) {
    const bool ok = nonreal == 0 &&
                    report.duplicate_velocity_eigenvalues.empty() &&
                    static_cast<int>(report.eigenvalues.size()) ==
                        2 * op.n_layers();
    bool distinct = ok;
    for (size_t i = 0; i + 1 < report.eigenvalues.size() && distinct; ++i)
      if (std::abs(report.eigenvalues[i + 1] - report.eigenvalues[i]) <
          1e-12)
        distinct = false;
    if (!distinct)
      fail(ErrorCode::internal,
           "classify_conditions: separation condition holds but the computed "
           "spectrum is not 2N distinct real eigenvalues");
    f.strictly_hyperbolic = true;
  }
  return f;
}

ConvergenceStudy convergence_study(const ContinuousProfile& profile,
                                   const std::vector<int>& n_list) {
  // hypothesis checks: strict monotonicity of u and nonvanishing
  // d/dlambda (h / u') on a sample grid
  const int ns = 4096;
  const double dl = 1.0 / (ns + 1);
  double c_const = 1.0;
  double du_max = 0.0;
  std::vector<double> du_all(ns), hu(ns);
  for (int i = 0; i < ns; ++i) {
    const double l = (i + 1) * dl;
    const double du = (profile.u(l + 0.5 * dl) - profile.u(l - 0.5 * dl)) / dl;
    const double dh = (profile.h(l + 0.5 * dl) - profile.h(l - 0.5 * dl)) / dl;
    du_all[i] = du;
    du_max = std::max(du_max, std::fabs(du));
    c_const = std::max({c_const, std::fabs(profile.h(l)), std::fabs(dh),
                        std::fabs(profile.u(l)), std::fabs(du)});
  }
  // A constant velocity is the shallow-water degenerate case: the spectrum
  // is real for every N, so the study is meaningful without the
  // monotonicity hypotheses.
  const bool constant_velocity = du_max == 0.0;
  if (!constant_velocity) {
    int mono = 0;
    for (int i = 0; i < ns; ++i) {
      const double du = du_all[i];
      if (du == 0.0 || (mono != 0 && (du > 0.0 ? 1 : -1) != mono))
        fail(ErrorCode::invalid_argument,
             "convergence_study: profile velocity is not strictly monotone");
      mono = du > 0.0 ? 1 : -1;
      hu[i] = profile.h((i + 1) * dl) / du;
    }
    int sgn = 0;
    for (int i = 1; i < ns; ++i) {
      const double d = hu[i] - hu[i - 1];
      if (d == 0.0) continue;
      const int s = d > 0.0 ? 1 : -1;
      if (sgn == 0) sgn = s;
      else if (s != sgn)
        fail(ErrorCode::invalid_argument,
             "convergence_study: d/dlambda (h / du) changes sign");
    }
  }

  ConvergenceStudy out;
  out.c_constant = c_const;
  for (int n : n_list) {
    if (n < 1)
      fail(ErrorCode::invalid_argument, "convergence_study: N must be >= 1");
    const LayerState ls = project_p0_uniform(profile, n);
    const auto rep = eigen_all(assemble(ls, profile.gravity()));
    ConvergenceRow row;
    row.n_layers = n;
    row.max_imag = rep.max_imag;
    row.bound = std::pow(
        3.0 * profile.gravity() * c_const * c_const * c_const / n, 0.25);
    row.within_bound = row.max_imag <= row.bound;
    out.rows.push_back(row);
  }
  return out;
}

} // namespace hydrospec
