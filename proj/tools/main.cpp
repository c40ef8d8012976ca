// hydrospec command-line tool: spectrum / simulate / stationary /
// characteristics / convergence experiments driven by JSON configs.
// Links only the public C API of the hydrospec shared library.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hydrospec.h"
#include "svg.hpp"

using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

[[noreturn]] void die(int code, const std::string& status,
                      const std::string& message) {
  json err;
  err["error"] = {{"exit_code", code}, {"status", status},
                  {"message", message}};
  std::cerr << err.dump() << '\n';
  std::exit(code);
}

const char* status_name(hs_status st) {
  switch (st) {
    case HS_OK: return "ok";
    case HS_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case HS_ERR_PARSE: return "parse";
    case HS_ERR_DOMAIN: return "domain";
    case HS_ERR_NUMERICAL: return "numerical";
    case HS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void check(hs_status st) {
  if (st == HS_OK) return;
  const int code = (st == HS_ERR_INVALID_ARGUMENT || st == HS_ERR_PARSE)
                       ? kExitConfig
                       : kExitNumerical;
  die(code, status_name(st), hs_last_error());
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) die(kExitConfig, "config", "cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    die(kExitConfig, "config", std::string("config parse error: ") + e.what());
  }
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- profile construction -------------------------------------------------

hs_profile* make_profile(const json& cfg) {
  if (!cfg.is_object())
    die(kExitConfig, "config", "profile spec must be an object");
  const double g = cfg.value("g", 10.0);
  hs_profile* p = nullptr;
  if (cfg.contains("preset")) {
    std::vector<double> params;
    if (cfg.contains("params"))
      params = cfg["params"].get<std::vector<double>>();
    check(hs_profile_create_preset(cfg["preset"].get<std::string>().c_str(),
                                   params.data(), params.size(), g, &p));
  } else if (cfg.contains("csv")) {
    check(hs_profile_create_tabulated(cfg["csv"].get<std::string>().c_str(), g,
                                      &p));
  } else {
    die(kExitConfig, "config", "profile spec needs 'preset' or 'csv'");
  }
  return p;
}

void write_meta(const std::string& out_dir, const std::string& command,
                const json& cfg, unsigned long long seed) {
  json meta;
  meta["command"] = command;
  meta["seed"] = seed;
  meta["config"] = cfg;
  std::ofstream f(out_dir + "/meta.json");
  f << meta.dump(2) << '\n';
}

// ---- spectrum ---------------------------------------------------------------

int cmd_spectrum(const json& cfg, const std::string& out_dir) {
  hs_profile* prof = make_profile(cfg.at("profile"));
  const int n_layers = cfg.value("n_layers", 20);
  if (n_layers < 1) die(kExitConfig, "config", "n_layers must be >= 1");
  const double nu_max = cfg.value("nu_max", 0.0);
  const int samples = cfg.value("scan_samples", 64);

  std::vector<double> gamma(n_layers, 1.0 / n_layers);
  hs_layers* layers = nullptr;
  check(hs_profile_project(prof, gamma.data(), gamma.size(), &layers));
  hs_operator* op = nullptr;
  double g = 0.0;
  check(hs_profile_gravity(prof, &g));
  check(hs_operator_create(layers, g, &op));
  hs_spectrum* spec = nullptr;
  check(hs_eigen_all(op, &spec));

  check(hs_spectrum_write_csv(spec, (out_dir + "/eigenvalues.csv").c_str()));
  check(hs_spectrum_write_json(spec, (out_dir + "/spectrum.json").c_str(),
                               prof, nu_max, samples));

  hs_continuous_report crep;
  std::vector<double> ir_re(64), ir_im(64);
  check(hs_analyze_continuous(prof, nu_max, samples, &crep, ir_re.data(),
                              ir_im.data(), ir_re.size()));

  size_t n_eig = 0;
  check(hs_spectrum_count(spec, &n_eig));
  std::vector<double> eig_re(n_eig), eig_im(n_eig);
  check(hs_spectrum_eigenvalues(spec, eig_re.data(), eig_im.data()));
  std::vector<double> lay_u(n_layers);
  check(hs_layers_get(layers, nullptr, lay_u.data(), nullptr));

  // localization picture: J± segments, continuous rectangle/circle, discrete
  // disks, eigenvalue scatter
  {
    const auto& L = crep.localization;
    const double pad = 0.15 * (L.j_plus_hi - L.j_minus_lo);
    svgplot::Canvas cv(L.j_minus_lo - pad, L.j_plus_hi + pad,
                       -1.15 * L.rect_height, 1.15 * L.rect_height);
    cv.title("spectrum localization");
    for (double ui : lay_u) cv.disk(ui, 0.0, L.sqrt_gh, "#7fa7d0", 0.12);
    cv.rect(L.u_minus, L.u_plus, -L.rect_height, L.rect_height, "#d0c07f",
            0.25);
    cv.disk(L.rect_center, 0.0, L.rect_radius, "#d0a07f", 0.25);
    cv.hseg(L.j_minus_lo, L.u_minus, 0.0, "#336633");
    cv.hseg(L.u_plus, L.j_plus_hi, 0.0, "#336633");
    cv.hseg(L.u_minus, L.u_plus, 0.0, "#111111");
    std::vector<double> re_r, im_r, re_c, im_c;
    for (size_t i = 0; i < n_eig; ++i) {
      if (eig_im[i] == 0.0) {
        re_r.push_back(eig_re[i]);
        im_r.push_back(0.0);
      } else {
        re_c.push_back(eig_re[i]);
        im_c.push_back(eig_im[i]);
      }
    }
    cv.scatter(re_r, im_r, "#2222cc", 3.0);
    cv.scatter(re_c, im_c, "#cc2222", 3.0);
    if (crep.has_c_minus) cv.scatter({crep.c_minus}, {0.0}, "#22aa22", 5.0);
    if (crep.has_c_plus) cv.scatter({crep.c_plus}, {0.0}, "#22aa22", 5.0);
    cv.write(out_dir + "/localization.svg", "Re c", "Im c");
  }

  int real_count = 0;
  double max_imag = 0.0;
  size_t dups = 0;
  check(hs_spectrum_stats(spec, &real_count, &max_imag, &dups));
  std::cout << "spectrum: N=" << n_layers << " eigenvalues=" << n_eig
            << " real=" << real_count << " max|Im|=" << format_g(max_imag)
            << '\n';
  if (crep.has_c_minus)
    std::cout << "continuous c- = " << format_g(crep.c_minus) << '\n';
  else
    std::cout << "continuous c- absent (F limit "
              << (crep.has_f_limit_minus ? format_g(crep.f_limit_minus) : "?")
              << ")\n";
  if (crep.has_c_plus)
    std::cout << "continuous c+ = " << format_g(crep.c_plus) << '\n';
  for (size_t i = 0; i < crep.n_imaginary_roots && i < ir_re.size(); ++i)
    if (ir_im[i] > 0.0)
      std::cout << "imaginary-axis root nu = " << format_g(ir_im[i]) << '\n';

  hs_spectrum_release(spec);
  hs_operator_release(op);
  hs_layers_release(layers);
  hs_profile_release(prof);
  return 0;
}

// ---- simulate ---------------------------------------------------------------

struct SimCtx {
  std::string kind;
  double length = 1.0;
  double u0 = 0.0;
  double u_amplitude = 0.0;
  double h0 = 1.0;
  double amplitude = 0.0;
  double zb_amplitude = 0.0;
  std::vector<double> layer_h;
  hs_profile* prof = nullptr;
};

double sim_u_cb(double x, double lam, void* vctx) {
  auto* c = static_cast<SimCtx*>(vctx);
  if (c->kind == "profile_uniform") {
    double u = 0.0;
    hs_profile_eval(c->prof, lam, &u, nullptr);
    return u;
  }
  if (c->kind == "lake_at_rest") return 0.0;
  return c->u0 + c->u_amplitude * std::sin(2.0 * M_PI * x / c->length);
}

double sim_h_cb(double x, double lam, void* vctx) {
  auto* c = static_cast<SimCtx*>(vctx);
  if (c->kind == "profile_uniform") {
    double h = 0.0;
    hs_profile_eval(c->prof, lam, nullptr, &h);
    return h;
  }
  if (c->kind == "lake_at_rest") {
    const size_t n = c->layer_h.size();
    const size_t a = std::min(n - 1, static_cast<size_t>(lam * n));
    return c->layer_h[a];
  }
  if (c->kind == "layered_translation") {
    // flat total depth: antisymmetric layer pattern around lambda = 1/2
    const double s = lam < 0.5 ? 1.0 : -1.0;
    return c->h0 + s * c->amplitude * std::sin(2.0 * M_PI * x / c->length);
  }
  // columnar_wave
  return c->h0 + c->amplitude * std::sin(2.0 * M_PI * x / c->length);
}

double sim_zb_cb(double x, void* vctx) {
  auto* c = static_cast<SimCtx*>(vctx);
  return c->zb_amplitude * std::sin(2.0 * M_PI * x / c->length);
}

int cmd_simulate(const json& cfg, const std::string& out_dir) {
  SimCtx ctx;
  const json& init = cfg.at("initial");
  ctx.kind = init.value("kind", "columnar_wave");
  ctx.length = cfg.value("length", 2.0 * M_PI);
  ctx.u0 = init.value("u0", 0.0);
  ctx.u_amplitude = init.value("u_amplitude", 0.0);
  ctx.h0 = init.value("h0", 1.0);
  ctx.amplitude = init.value("amplitude", 0.0);
  if (init.contains("layer_h"))
    ctx.layer_h = init["layer_h"].get<std::vector<double>>();
  if (cfg.contains("zb")) ctx.zb_amplitude = cfg["zb"].value("amplitude", 0.0);
  if (init.contains("profile")) ctx.prof = make_profile(init["profile"]);

  int n_layers = cfg.value("n_layers", 1);
  if (ctx.kind == "lake_at_rest") {
    if (ctx.layer_h.empty())
      die(kExitConfig, "config", "lake_at_rest needs layer_h");
    n_layers = static_cast<int>(ctx.layer_h.size());
  }
  if (ctx.kind == "layered_translation" && n_layers % 2 != 0)
    die(kExitConfig, "config", "layered_translation needs even n_layers");
  const int n_cells = cfg.value("n_cells", 200);
  const double g = cfg.value("g", 10.0);
  const double t_end = cfg.value("t_end", 1.0);
  const double cfl = cfg.value("cfl", 0.9);
  const int frame_every = cfg.value("frame_every", 0);
  const int diag_every = cfg.value("diagnostics_every", 10);

  std::vector<double> gamma(n_layers, 1.0 / n_layers);
  hs_sim* sim = nullptr;
  check(hs_sim_create(sim_u_cb, sim_h_cb,
                      ctx.zb_amplitude != 0.0 ? sim_zb_cb : nullptr, &ctx,
                      ctx.length, n_cells, gamma.data(), n_layers, g, &sim));

  struct DiagRow {
    hs_diagnostics d;
    std::vector<double> mass;
    hs_sim* clone = nullptr;
  };
  std::vector<DiagRow> rows;
  auto sample = [&]() {
    DiagRow row;
    row.mass.resize(n_layers);
    check(hs_sim_diagnostics(sim, &row.d, row.mass.data()));
    check(hs_sim_clone(sim, &row.clone));
    rows.push_back(std::move(row));
  };

  sample();
  int frame_index = 0;
  if (frame_every > 0)
    check(hs_sim_write_frame(sim, out_dir.c_str(), frame_index++));
  double t = 0.0;
  long k = 0;
  while (t < t_end - 1e-14 * (1.0 + t_end)) {
    double dt = 0.0;
    check(hs_sim_step(sim, cfl, t_end - t, &dt));
    t += dt;
    ++k;
    if (diag_every > 0 && k % diag_every == 0) sample();
    if (frame_every > 0 && k % frame_every == 0)
      check(hs_sim_write_frame(sim, out_dir.c_str(), frame_index++));
  }
  if (rows.back().d.time != t) sample();
  if (frame_every > 0)
    check(hs_sim_write_frame(sim, out_dir.c_str(), frame_index++));

  // Riemann residuals at interior diagnostic instants
  std::vector<double> res_p(rows.size(), std::nan("")),
      res_m(rows.size(), std::nan(""));
  for (size_t i = 1; i + 1 < rows.size(); ++i) {
    check(hs_sim_riemann_residual(rows[i - 1].clone, rows[i].clone,
                                  rows[i + 1].clone, 1, &res_p[i]));
    check(hs_sim_riemann_residual(rows[i - 1].clone, rows[i].clone,
                                  rows[i + 1].clone, 0, &res_m[i]));
  }

  {
    std::ofstream out(out_dir + "/diagnostics.csv");
    out << "t";
    for (int a = 0; a < n_layers; ++a) out << ",mass_" << a;
    out << ",energy,max_wave_speed,riemann_residual_plus,riemann_residual_"
           "minus\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      out << format_g(rows[i].d.time);
      for (double m : rows[i].mass) out << ',' << format_g(m);
      out << ',' << format_g(rows[i].d.energy) << ','
          << format_g(rows[i].d.max_wave_speed) << ',' << format_g(res_p[i])
          << ',' << format_g(res_m[i]) << '\n';
    }
  }
  std::cout << "simulate: " << ctx.kind << " t=" << format_g(t) << " steps="
            << k << " diagnostics=" << rows.size() << '\n';

  for (auto& r : rows) hs_sim_release(r.clone);
  hs_sim_release(sim);
  if (ctx.prof) hs_profile_release(ctx.prof);
  return 0;
}

// ---- stationary ---------------------------------------------------------------

struct StatCtx {
  double f0 = 1.0, f1 = 2.0;  // F affine between f0 and f1
  std::string g_kind = "fig2";
  double g_amplitude = 0.7;
};

double stat_F_cb(double lam, void* vctx) {
  auto* c = static_cast<StatCtx*>(vctx);
  return c->f0 + (c->f1 - c->f0) * lam;
}
double stat_Fp_cb(double, void* vctx) {
  auto* c = static_cast<StatCtx*>(vctx);
  return c->f1 - c->f0;
}
double stat_G_cb(double x, void* vctx) {
  auto* c = static_cast<StatCtx*>(vctx);
  if (c->g_kind == "sine") return c->g_amplitude * std::sin(x);
  // Fig.-2 family: 0.7 sin x + 0.2 tanh(5x)
  return 0.7 * std::sin(x) + 0.2 * std::tanh(5.0 * x);
}

int cmd_stationary(const json& cfg, const std::string& out_dir) {
  StatCtx ctx;
  if (cfg.contains("F")) {
    ctx.f0 = cfg["F"].value("f0", 1.0);
    ctx.f1 = cfg["F"].value("f1", 2.0);
  }
  if (cfg.contains("G")) {
    ctx.g_kind = cfg["G"].value("kind", "fig2");
    ctx.g_amplitude = cfg["G"].value("amplitude", 0.7);
  }
  const double g = cfg.value("g", 10.0);
  const double x_min = cfg.value("x_min", -2.0 * M_PI);
  const double x_max = cfg.value("x_max", 2.0 * M_PI);
  const int n_x = cfg.value("n_x", 257);
  const int n_lambda = cfg.value("n_lambda", 32);

  hs_stationary* st = nullptr;
  check(hs_stationary_create(stat_F_cb, stat_G_cb, nullptr, stat_Fp_cb, &ctx,
                             g, x_min, x_max, n_x, n_lambda, &st));
  check(hs_stationary_write_csv(st, (out_dir + "/stationary_fields.csv").c_str(),
                                (out_dir + "/stationary_columns.csv").c_str()));

  // Fig.-2-style picture: topography, free surface and iso-lambda lines
  {
    std::vector<double> xs(n_x);
    for (int i = 0; i < n_x; ++i)
      xs[i] = x_min + (x_max - x_min) * i / (n_x - 1.0);
    double y_lo = 1e300, y_hi = -1e300;
    std::vector<std::vector<double>> lines;
    const std::vector<double> lams = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (double lam : lams) {
      std::vector<double> ys(n_x);
      for (int i = 0; i < n_x; ++i) {
        check(hs_stationary_eval(st, xs[i], lam, nullptr, nullptr, &ys[i]));
        y_lo = std::min(y_lo, ys[i]);
        y_hi = std::max(y_hi, ys[i]);
      }
      lines.push_back(std::move(ys));
    }
    const double pad = 0.1 * (y_hi - y_lo);
    svgplot::Canvas cv(x_min, x_max, y_lo - pad, y_hi + pad);
    cv.title("stationary solution");
    for (size_t i = 0; i < lines.size(); ++i) {
      const bool edge = i == 0 || i + 1 == lines.size();
      cv.polyline(xs, lines[i], edge ? "#111111" : "#5577aa",
                  edge ? 2.0 : 1.0, edge ? "" : "4,3");
    }
    cv.write(out_dir + "/stationary.svg", "x", "z");
  }

  if (cfg.contains("residual_ladder")) {
    const double t_end = cfg.value("t_end", 1.0);
    const double cfl = cfg.value("cfl", 0.9);
    std::ofstream lad(out_dir + "/residual_ladder.csv");
    lad << "n_layers,n_cells,drift,mass_drift\n";
    for (const auto& rung : cfg["residual_ladder"]) {
      const int nl = rung.at("n_layers").get<int>();
      const int nc = rung.at("n_cells").get<int>();
      double drift = 0.0, mass = 0.0;
      check(hs_stationary_residual(st, nl, nc, t_end, cfl, 0, &drift, &mass));
      lad << nl << ',' << nc << ',' << format_g(drift) << ','
          << format_g(mass) << '\n';
      std::cout << "stationary drift N=" << nl << " M=" << nc << ": "
                << format_g(drift) << " (mass drift " << format_g(mass)
                << ")\n";
    }
  }
  hs_stationary_release(st);
  return 0;
}

// ---- characteristics ------------------------------------------------------------

struct FlowCtx {
  std::string kind;
  double eta0 = 1.0;
};

double flow_u_cb(double, double x, double z, void* vctx) {
  auto* c = static_cast<FlowCtx*>(vctx);
  if (c->kind == "burgers_blowup") return z;
  return x * (z - 0.5 * c->eta0);  // vorticity example
}
double flow_w_cb(double, double, double z, void* vctx) {
  auto* c = static_cast<FlowCtx*>(vctx);
  if (c->kind == "burgers_blowup") return 0.0;
  return z * (c->eta0 - z);
}
double flow_phi0_cb(double x, double lam, void* vctx) {
  auto* c = static_cast<FlowCtx*>(vctx);
  if (c->kind == "burgers_blowup")
    return lam * (c->eta0 + (1.0 - lam) * (-std::sin(x)));
  return lam * c->eta0;
}

int cmd_characteristics(const json& cfg, const std::string& out_dir) {
  FlowCtx ctx;
  const json& flow = cfg.at("flow");
  ctx.kind = flow.value("kind", "vorticity_example");
  ctx.eta0 = flow.value("eta0", 1.0);
  const double dt = cfg.value("dt", 1e-3);

  hs_phi_grid grid;
  grid.x_min = cfg.value("x_min", -1.0);
  grid.x_max = cfg.value("x_max", 1.0);
  grid.n_x = cfg.value("n_x", 101);
  grid.n_lambda = cfg.value("n_lambda", 101);
  grid.seed_x_min = cfg.value("seed_x_min", grid.x_min);
  grid.seed_x_max = cfg.value("seed_x_max", grid.x_max);
  grid.n_seeds = cfg.value("n_seeds", 401);

  std::vector<double> times = {0.0, 2.0, 4.0, 6.0};
  if (cfg.contains("times")) times = cfg["times"].get<std::vector<double>>();

  json info;
  info["frames"] = json::array();
  svgplot::Canvas cv(0.0, 1.0, 0.0, 1.05 * std::max(1.0, ctx.eta0));
  cv.title("phi(t, x_mid, lambda)");
  const std::vector<std::string> palette = {"#332288", "#117733", "#CC6677",
                                            "#88CCEE", "#999933"};
  int idx = 0;
  for (double t : times) {
    hs_phi* phi = nullptr;
    check(hs_phi_evolve(flow_u_cb, flow_w_cb, flow_phi0_cb, &ctx, t, &grid, dt,
                        5, &phi));
    char name[32];
    std::snprintf(name, sizeof name, "phi_%06d.csv", idx);
    check(hs_phi_write_csv(phi, (out_dir + "/" + name).c_str()));
    int valid = 0, nl = 0, nx = 0;
    double tt = 0.0, mind = 0.0, tb = 0.0;
    check(hs_phi_info(phi, &valid, &tt, &mind, &tb));
    check(hs_phi_size(phi, &nl, &nx));
    info["frames"].push_back({{"file", name},
                              {"t", tt},
                              {"valid", static_cast<bool>(valid)},
                              {"min_dlambda_phi", mind}});
    // mid-x column of phi vs lambda
    std::vector<double> lam(nl), phiv(static_cast<size_t>(nl) * nx);
    check(hs_phi_data(phi, nullptr, lam.data(), phiv.data()));
    std::vector<double> col(nl);
    for (int l = 0; l < nl; ++l)
      col[l] = phiv[static_cast<size_t>(l) * nx + nx / 2];
    cv.polyline(lam, col, palette[idx % palette.size()], 1.8);
    hs_phi_release(phi);
    ++idx;
  }
  if (ctx.kind == "burgers_blowup") {
    // run past the expected fold and report the detected time
    hs_phi* phi = nullptr;
    const double horizon = cfg.value("detect_until", 5.0);
    check(hs_phi_evolve(flow_u_cb, flow_w_cb, flow_phi0_cb, &ctx, horizon,
                        &grid, dt, 5, &phi));
    int valid = 0;
    double tt = 0.0, mind = 0.0, tb = 0.0;
    check(hs_phi_info(phi, &valid, &tt, &mind, &tb));
    info["blowup"] = {{"detected", valid == 0},
                      {"t_detected", tb},
                      {"t_formula", hs_blowup_time(-1.0, ctx.eta0)}};
    hs_phi_release(phi);
  }
  cv.write(out_dir + "/characteristics.svg", "lambda", "phi");
  std::ofstream f(out_dir + "/characteristics.json");
  f << info.dump(2) << '\n';
  std::cout << "characteristics: " << ctx.kind << " frames=" << times.size()
            << '\n';
  return 0;
}

// ---- convergence ------------------------------------------------------------------

int cmd_convergence(const json& cfg, const std::string& out_dir) {
  hs_profile* prof = make_profile(cfg.at("profile"));
  std::vector<int> n_list = {8, 16, 32, 64, 128, 256};
  if (cfg.contains("n_list")) n_list = cfg["n_list"].get<std::vector<int>>();

  std::vector<hs_convergence_row> rows(n_list.size());
  double c_const = 0.0;
  check(hs_convergence_study(prof, n_list.data(), n_list.size(), rows.data(),
                             &c_const));
  {
    std::ofstream out(out_dir + "/convergence.csv");
    out << "N,max_imag,bound\n";
    for (const auto& r : rows)
      out << r.n_layers << ',' << format_g(r.max_imag) << ','
          << format_g(r.bound) << '\n';
  }
  std::cout << "convergence study (C = " << format_g(c_const) << ")\n";
  std::cout << "    N    max|Im c|      bound\n";
  for (const auto& r : rows)
    std::printf("%5d %12.6g %10.6g %s\n", r.n_layers, r.max_imag, r.bound,
                r.within_bound ? "ok" : "VIOLATED");

  double lo = 1e300, hi = 0.0;
  for (const auto& r : rows) {
    lo = std::min({lo, r.max_imag, r.bound});
    hi = std::max({hi, r.max_imag, r.bound});
  }
  svgplot::Canvas cv(n_list.front() * 0.8, n_list.back() * 1.2, lo * 0.8,
                     hi * 1.2, true, true);
  cv.title("max |Im c| vs N");
  std::vector<double> xs, ys, bs;
  for (const auto& r : rows) {
    xs.push_back(r.n_layers);
    ys.push_back(std::max(r.max_imag, 1e-300));
    bs.push_back(r.bound);
  }
  cv.polyline(xs, ys, "#2222cc", 2.0);
  cv.scatter(xs, ys, "#2222cc", 3.0);
  cv.polyline(xs, bs, "#cc2222", 1.5, "5,4");
  cv.write(out_dir + "/convergence.svg", "N", "max |Im c|");

  hs_profile_release(prof);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"hydrospec: spectral analysis and multilayer simulation of "
               "semi-Lagrangian free-surface flow"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  unsigned long long seed = 0;
  int override_n_layers = -1;
  double override_t_end = -1.0, override_cfl = -1.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "run seed recorded in outputs");
    sub->add_option("--n-layers", override_n_layers,
                    "override n_layers from the config");
    sub->add_option("--t-end", override_t_end, "override t_end");
    sub->add_option("--cfl", override_cfl, "override cfl");
  };
  CLI::App* s_spec = app.add_subcommand("spectrum",
                                        "continuous + discrete spectrum");
  CLI::App* s_sim = app.add_subcommand("simulate", "multilayer time evolution");
  CLI::App* s_stat = app.add_subcommand("stationary", "exact steady states");
  CLI::App* s_char = app.add_subcommand("characteristics",
                                        "change-of-variable evolution");
  CLI::App* s_conv = app.add_subcommand("convergence",
                                        "spectrum convergence study");
  for (CLI::App* sub : {s_spec, s_sim, s_stat, s_char, s_conv})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);

  json cfg = load_config(config_path);
  if (override_n_layers > 0) cfg["n_layers"] = override_n_layers;
  if (override_t_end >= 0.0) cfg["t_end"] = override_t_end;
  if (override_cfl > 0.0) cfg["cfl"] = override_cfl;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) die(kExitConfig, "config", "cannot create output dir: " + out_dir);

  try {
    if (app.got_subcommand(s_spec)) {
      write_meta(out_dir, "spectrum", cfg, seed);
      return cmd_spectrum(cfg, out_dir);
    }
    if (app.got_subcommand(s_sim)) {
      write_meta(out_dir, "simulate", cfg, seed);
      return cmd_simulate(cfg, out_dir);
    }
    if (app.got_subcommand(s_stat)) {
      write_meta(out_dir, "stationary", cfg, seed);
      return cmd_stationary(cfg, out_dir);
    }
    if (app.got_subcommand(s_char)) {
      write_meta(out_dir, "characteristics", cfg, seed);
      return cmd_characteristics(cfg, out_dir);
    }
    if (app.got_subcommand(s_conv)) {
      write_meta(out_dir, "convergence", cfg, seed);
      return cmd_convergence(cfg, out_dir);
    }
  } catch (const json::exception& e) {
    die(kExitConfig, "config", e.what());
  }
  return 0;
}
