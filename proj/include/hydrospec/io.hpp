#ifndef HYDROSPEC_IO_HPP
#define HYDROSPEC_IO_HPP

#include <string>
#include <vector>

#include "hydrospec/dispersion.hpp"
#include "hydrospec/lagrangian.hpp"
#include "hydrospec/mlspectrum.hpp"
#include "hydrospec/mlsolver.hpp"
#include "hydrospec/stationary.hpp"

namespace hydrospec {

/// Shortest round-trip decimal form of a double (deterministic output).
std::string format_double(double v);

/// Eigenvalue table `re,im,multiplicity` (exactly equal roots are grouped).
void write_eigenvalues_csv(const std::string& path,
                           const DiscreteSpectrumReport& report);

/// JSON document mirroring the discrete report, optionally with the
/// continuous-spectrum analysis side by side.
void write_spectrum_json(const std::string& path,
                         const DiscreteSpectrumReport& report,
                         const ContinuousSpectrumReport* continuous);

/// State snapshot `x,alpha,H,u` plus a sidecar JSON (t, g, gamma, zb).
/// Files are named frame_{index:06}.csv / .json inside dir.
void write_frame(const std::string& dir, int index, const SimState& state);

void write_diagnostics_csv(const std::string& path,
                           const std::vector<Diagnostics>& series,
                           const std::vector<double>& riemann_plus = {},
                           const std::vector<double>& riemann_minus = {});

/// PhiField snapshot `x,lambda,phi`.
void write_phi_csv(const std::string& path, const PhiField& field);

/// Steady-state datasets: `x,lambda,phi,u,H` and `x,z_b,eta,h`.
void write_stationary_csv(const std::string& fields_path,
                          const std::string& columns_path,
                          const StationaryFields& fields);

void write_convergence_csv(const std::string& path,
                           const ConvergenceStudy& study);

} // namespace hydrospec

#endif
