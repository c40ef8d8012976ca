#ifndef HYDROSPEC_ROOTFIND_HPP
#define HYDROSPEC_ROOTFIND_HPP

#include <functional>

namespace hydrospec {

/// Bisection on a bracketing interval [a,b] with f(a), f(b) of opposite sign.
/// Runs until the interval width falls below xtol (absolute).
double bisect(const std::function<double(double)>& f, double a, double b,
              double xtol, int max_iter = 200);

/// Newton iteration kept inside [lo,hi]; any step leaving the bracket falls
/// back to bisection on the current sign-change interval.
/// Stops when |f| <= ftol or the step is below xtol.
double newton_safeguarded(const std::function<double(double)>& f,
                          const std::function<double(double)>& df, double x0,
                          double lo, double hi, double ftol, double xtol,
                          int max_iter = 100);

/// Golden-section minimization of a unimodal function on [a,b].
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double xtol, int max_iter = 200);

} // namespace hydrospec

#endif
