#include "hydrospec/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "hydrospec/errors.hpp"

namespace hydrospec {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::invalid_argument, "cannot write '" + path + "'");
  return out;
}

nlohmann::json complex_list(const std::vector<std::complex<double>>& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& z : v) arr.push_back({{"re", z.real()}, {"im", z.imag()}});
  return arr;
}

} // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_eigenvalues_csv(const std::string& path,
                           const DiscreteSpectrumReport& report) {
  auto out = open_out(path);
  out << "re,im,multiplicity\n";
  const auto& ev = report.eigenvalues;
  for (size_t i = 0; i < ev.size();) {
    size_t j = i;
    while (j < ev.size() && ev[j] == ev[i]) ++j;
    out << format_double(ev[i].real()) << ',' << format_double(ev[i].imag())
        << ',' << (j - i) << '\n';
    i = j;
  }
}

void write_spectrum_json(const std::string& path,
                         const DiscreteSpectrumReport& report,
                         const ContinuousSpectrumReport* continuous) {
  nlohmann::json doc;
  nlohmann::json d;
  d["eigenvalues"] = complex_list(report.eigenvalues);
  d["residuals"] = report.residuals;
  d["real_count"] = report.real_count;
  d["c_minus"] = report.c_minus;
  d["c_plus"] = report.c_plus;
  d["duplicate_velocity_eigenvalues"] = report.duplicate_velocity_eigenvalues;
  d["max_imag"] = report.max_imag;
  d["localization"] = {{"u_minus", report.localization.u_minus},
                       {"u_plus", report.localization.u_plus},
                       {"sqrt_ghn", report.localization.sqrt_ghn},
                       {"disk_centers", report.localization.disk_centers}};
  nlohmann::json flags;
  flags["hull_below_sqrt_ghn"] = report.condition_flags.hull_below_sqrt_ghn;
  flags["adjacent_gaps_small"] = report.condition_flags.adjacent_gaps_small;
  flags["pairwise_separated"] = report.condition_flags.pairwise_separated;
  if (report.condition_flags.two_real_only)
    flags["two_real_only"] = *report.condition_flags.two_real_only;
  if (report.condition_flags.strictly_hyperbolic)
    flags["strictly_hyperbolic"] = *report.condition_flags.strictly_hyperbolic;
  d["condition_flags"] = flags;
  doc["discrete"] = d;

  if (continuous) {
    nlohmann::json c;
    if (continuous->real_roots.c_minus)
      c["c_minus"] = *continuous->real_roots.c_minus;
    if (continuous->real_roots.c_plus)
      c["c_plus"] = *continuous->real_roots.c_plus;
    if (continuous->real_roots.f_limit_minus)
      c["f_limit_minus"] = *continuous->real_roots.f_limit_minus;
    if (continuous->real_roots.f_limit_plus)
      c["f_limit_plus"] = *continuous->real_roots.f_limit_plus;
    c["imaginary_roots"] = complex_list(continuous->imaginary_roots);
    c["essential_hull"] = {continuous->essential_lo, continuous->essential_hi};
    c["residuals"] = continuous->residuals;
    c["localization"] = {{"u_minus", continuous->localization.u_minus},
                         {"u_plus", continuous->localization.u_plus},
                         {"sqrt_gh", continuous->localization.sqrt_gh},
                         {"j_minus_lo", continuous->localization.j_minus_lo},
                         {"j_plus_hi", continuous->localization.j_plus_hi},
                         {"rect_center", continuous->localization.rect_center},
                         {"rect_radius", continuous->localization.rect_radius},
                         {"rect_height", continuous->localization.rect_height}};
    const char* fj = "indeterminate";
    switch (continuous->predicates.fjortoft) {
      case FjortoftClass::monotone_vorticity: fj = "monotone_vorticity"; break;
      case FjortoftClass::single_critical_point:
        fj = "single_critical_point";
        break;
      case FjortoftClass::neither: fj = "neither"; break;
      case FjortoftClass::indeterminate: fj = "indeterminate"; break;
    }
    c["predicates"] = {
        {"holder_half_guarantee", continuous->predicates.holder_half_guarantee},
        {"holder_quarter_small_k",
         continuous->predicates.holder_quarter_small_k},
        {"fjortoft_like", fj}};
    doc["continuous"] = c;
  }
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_frame(const std::string& dir, int index, const SimState& state) {
  char name[32];
  std::snprintf(name, sizeof name, "frame_%06d", index);
  {
    auto out = open_out(dir + "/" + name + ".csv");
    out << "x,alpha,H,u\n";
    for (int j = 0; j < state.n_cells; ++j)
      for (int alpha = 0; alpha < state.n_layers; ++alpha)
        out << format_double(state.x_center(j)) << ',' << alpha << ','
            << format_double(state.h_at(alpha, j)) << ','
            << format_double(state.u_at(alpha, j)) << '\n';
  }
  nlohmann::json meta;
  meta["t"] = state.time;
  meta["g"] = state.gravity;
  meta["gamma"] = state.gamma;
  meta["z_b"] = state.zb;
  meta["length"] = state.length;
  auto out = open_out(dir + "/" + name + ".json");
  out << meta.dump(2) << '\n';
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<Diagnostics>& series,
                           const std::vector<double>& riemann_plus,
                           const std::vector<double>& riemann_minus) {
  auto out = open_out(path);
  const size_t n_layers = series.empty() ? 0 : series.front().layer_mass.size();
  out << "t";
  for (size_t a = 0; a < n_layers; ++a) out << ",mass_" << a;
  out << ",energy,max_wave_speed";
  if (!riemann_plus.empty()) out << ",riemann_residual_plus";
  if (!riemann_minus.empty()) out << ",riemann_residual_minus";
  out << '\n';
  for (size_t i = 0; i < series.size(); ++i) {
    const auto& d = series[i];
    out << format_double(d.time);
    for (double m : d.layer_mass) out << ',' << format_double(m);
    out << ',' << format_double(d.energy) << ','
        << format_double(d.max_wave_speed);
    if (!riemann_plus.empty())
      out << ','
          << format_double(i < riemann_plus.size() ? riemann_plus[i]
                                                   : std::nan(""));
    if (!riemann_minus.empty())
      out << ','
          << format_double(i < riemann_minus.size() ? riemann_minus[i]
                                                    : std::nan(""));
    out << '\n';
  }
}

void write_phi_csv(const std::string& path, const PhiField& field) {
  auto out = open_out(path);
  out << "x,lambda,phi\n";
  for (size_t l = 0; l < field.lambda.size(); ++l)
    for (size_t j = 0; j < field.x.size(); ++j)
      out << format_double(field.x[j]) << ',' << format_double(field.lambda[l])
          << ',' << format_double(field.phi[l * field.x.size() + j]) << '\n';
}

void write_stationary_csv(const std::string& fields_path,
                          const std::string& columns_path,
                          const StationaryFields& fields) {
  const auto& g = fields.grid();
  {
    auto out = open_out(fields_path);
    out << "x,lambda,phi,u,H\n";
    for (int i = 0; i < g.n_x; ++i) {
      const double x = g.x_min + (g.x_max - g.x_min) * i / (g.n_x - 1.0);
      for (int l = 0; l <= g.n_lambda; ++l) {
        const double lam = static_cast<double>(l) / g.n_lambda;
        out << format_double(x) << ',' << format_double(lam) << ','
            << format_double(fields.phi(x, lam)) << ','
            << format_double(fields.u(x, lam)) << ','
            << format_double(fields.H(x, lam)) << '\n';
      }
    }
  }
  auto out = open_out(columns_path);
  out << "x,z_b,eta,h\n";
  for (int i = 0; i < g.n_x; ++i) {
    const double x = g.x_min + (g.x_max - g.x_min) * i / (g.n_x - 1.0);
    out << format_double(x) << ',' << format_double(fields.zb(x)) << ','
        << format_double(fields.eta(x)) << ',' << format_double(fields.h(x))
        << '\n';
  }
}

void write_convergence_csv(const std::string& path,
                           const ConvergenceStudy& study) {
  auto out = open_out(path);
  out << "N,max_imag,bound\n";
  for (const auto& row : study.rows)
    out << row.n_layers << ',' << format_double(row.max_imag) << ','
        << format_double(row.bound) << '\n';
}

} // namespace hydrospec
