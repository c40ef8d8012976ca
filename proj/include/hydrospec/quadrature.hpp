#ifndef HYDROSPEC_QUADRATURE_HPP
#define HYDROSPEC_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace hydrospec {

/// Result of an adaptive integration: value plus the accumulated Richardson
/// error estimate and bookkeeping useful for diagnosing hard integrands.
template <typename T>
struct QuadResult {
  T value{};
  double error_estimate = 0.0;  // sum of per-panel |S_fine - S_coarse|/15
  int max_depth = 0;            // deepest bisection level reached
  bool converged = true;        // false if the depth cap was hit somewhere
  double worst_point = 0.0;     // midpoint of the worst unconverged panel
};

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_depth = 60;
};

/// Adaptive Simpson with interval bisection.  Each panel is accepted when the
/// Richardson estimate |S2 - S1|/15 is below the local tolerance; the
/// extrapolated value S2 + (S2 - S1)/15 is accumulated.
QuadResult<double> integrate(const std::function<double(double)>& f,
                             double a, double b,
                             const QuadOptions& opt = {});

/// Same scheme for complex-valued integrands (magnitude-based estimates).
QuadResult<std::complex<double>> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadOptions& opt = {});

} // namespace hydrospec

#endif
