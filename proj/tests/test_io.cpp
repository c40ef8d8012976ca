#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hydrospec/io.hpp"
#include "hydrospec/mlspectrum.hpp"

using namespace hydrospec;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DiscreteSpectrumReport sample_report() {
  LayerState ls;
  ls.gamma = {0.5, 0.5};
  ls.u = {0.0, 3.0};
  ls.h = {1.0, 1.0};
  return eigen_all(assemble(ls, 10.0));
}

} // namespace

TEST_CASE("eigenvalue csv groups exact duplicates") {
  LayerState ls;
  ls.gamma = {0.25, 0.25, 0.25, 0.25};
  ls.u = {1.0, 1.0, 1.0, 1.0};
  ls.h = {1.0, 1.0, 1.0, 1.0};
  const auto rep = eigen_all(assemble(ls, 10.0));
  write_eigenvalues_csv("io_eig.csv", rep);
  const std::string text = slurp("io_eig.csv");
  CHECK(text.find("re,im,multiplicity") == 0);
  CHECK(text.find(",6\n") != std::string::npos);  // 2(N-1) = 6 at u*
  std::remove("io_eig.csv");
}

TEST_CASE("spectrum json is valid and mirrors the report") {
  const auto rep = sample_report();
  write_spectrum_json("io_spec.json", rep, nullptr);
  const auto doc = nlohmann::json::parse(slurp("io_spec.json"));
  CHECK(doc["discrete"]["eigenvalues"].size() == 4);
  CHECK(doc["discrete"]["real_count"].get<int>() == 2);
  CHECK(doc["discrete"]["localization"]["sqrt_ghn"].get<double>() ==
        doctest::Approx(std::sqrt(10.0)));
  std::remove("io_spec.json");
}

TEST_CASE("frames carry deterministic names and sidecars") {
  SimState s;
  s.n_layers = 1;
  s.n_cells = 3;
  s.length = 3.0;
  s.gravity = 10.0;
  s.gamma = {1.0};
  s.zb = {0.0, 0.0, 0.0};
  s.H = {1.0, 2.0, 3.0};
  s.Q = {0.1, 0.2, 0.3};
  std::filesystem::create_directories("io_frames");
  write_frame("io_frames", 7, s);
  CHECK(std::filesystem::exists("io_frames/frame_000007.csv"));
  CHECK(std::filesystem::exists("io_frames/frame_000007.json"));
  const std::string text = slurp("io_frames/frame_000007.csv");
  CHECK(text.find("x,alpha,H,u") == 0);
  const auto meta =
      nlohmann::json::parse(slurp("io_frames/frame_000007.json"));
  CHECK(meta["g"].get<double>() == 10.0);
  CHECK(meta["gamma"].size() == 1);
  std::filesystem::remove_all("io_frames");
}

TEST_CASE("writers are byte-deterministic") {
  const auto rep = sample_report();
  write_eigenvalues_csv("io_det_a.csv", rep);
  write_eigenvalues_csv("io_det_b.csv", rep);
  CHECK(slurp("io_det_a.csv") == slurp("io_det_b.csv"));
  std::remove("io_det_a.csv");
  std::remove("io_det_b.csv");
}

TEST_CASE("phi csv layout") {
  PhiField f;
  f.x = {0.0, 1.0};
  f.lambda = {0.0, 1.0};
  f.phi = {0.0, 0.0, 1.0, 1.0};
  write_phi_csv("io_phi.csv", f);
  const std::string text = slurp("io_phi.csv");
  CHECK(text.find("x,lambda,phi") == 0);
  // 4 data rows
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  std::remove("io_phi.csv");
}

TEST_CASE("diagnostics csv with residual columns") {
  Diagnostics d;
  d.time = 0.0;
  d.layer_mass = {1.0, 2.0};
  d.energy = 3.0;
  d.max_wave_speed = 4.0;
  write_diagnostics_csv("io_diag.csv", {d, d}, {0.5, 0.25}, {0.5, 0.125});
  const std::string text = slurp("io_diag.csv");
  CHECK(text.find("t,mass_0,mass_1,energy,max_wave_speed,riemann_residual_"
                  "plus,riemann_residual_minus") == 0);
  std::remove("io_diag.csv");
}
