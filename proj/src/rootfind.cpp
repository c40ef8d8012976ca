#include "hydrospec/rootfind.hpp"

#include <cmath>

#include "hydrospec/errors.hpp"

namespace hydrospec {

double bisect(const std::function<double(double)>& f, double a, double b,
              double xtol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    fail(ErrorCode::numerical, "bisect: interval does not bracket a root");
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double newton_safeguarded(const std::function<double(double)>& f,
                          const std::function<double(double)>& df, double x0,
                          double lo, double hi, double ftol, double xtol,
                          int max_iter) {
  double x = x0;
  double flo = f(lo);
  double fx = f(x);
  for (int it = 0; it < max_iter; ++it) {
    if (std::fabs(fx) <= ftol) return x;
    const double d = df(x);
    double xn = (d != 0.0) ? x - fx / d : lo - 1.0;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // fall back to bisection
    const double fxn = f(xn);
    // maintain the sign-change bracket
    if ((fxn > 0.0) == (flo > 0.0)) {
      lo = xn;
      flo = fxn;
    } else {
      hi = xn;
    }
    if (std::fabs(xn - x) <= xtol && std::fabs(fxn) <= ftol) return xn;
    x = xn;
    fx = fxn;
  }
  return x;
}

double golden_min(const std::function<double(double)>& f, double a, double b,
                  double xtol, int max_iter) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

} // namespace hydrospec
