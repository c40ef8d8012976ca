#include <doctest.h>

#include <cmath>
#include <random>

#include "hydrospec/errors.hpp"
#include "hydrospec/lagrangian.hpp"
#include "hydrospec/profiles.hpp"

using namespace hydrospec;

namespace {

// closed form of the explicit rotational example (eta0 = 1):
// phi(t, lambda) = lambda / ((1 - lambda) e^{-t} + lambda)
double vorticity_phi(double t, double lam) {
  return lam / ((1.0 - lam) * std::exp(-t) + lam);
}

} // namespace

TEST_CASE("columnar flow keeps the affine-in-lambda shape") {
  // u constant, w = 0, flat bottom: phi(t,x,lambda) = lambda eta0(x - u t)
  const double u0 = 0.4;
  auto eta0 = [](double x) { return 1.0 + 0.1 * std::sin(x); };
  PhiGrid grid;
  grid.x_min = -1.0;
  grid.x_max = 1.0;
  grid.n_x = 51;
  grid.n_lambda = 21;
  grid.seed_x_min = -3.0;
  grid.seed_x_max = 2.0;
  grid.n_seeds = 2001;
  const double T = 2.0;
  const auto f = evolve_phi([u0](double, double, double) { return u0; },
                            [](double, double, double) { return 0.0; },
                            [&](double x, double l) { return l * eta0(x); }, T,
                            grid, {1e-2, 5, 1e-6});
  REQUIRE(f.valid);
  double worst = 0.0;
  for (int l = 0; l < grid.n_lambda; ++l)
    for (int j = 0; j < grid.n_x; ++j) {
      const double exact = f.lambda[l] * eta0(f.x[j] - u0 * T);
      worst = std::max(worst, std::fabs(f.at(l, j) - exact));
    }
  CHECK(worst < 1e-6);
  // boundary pinning: bottom row is the (flat) bed, top row the surface
  for (int j = 0; j < grid.n_x; ++j) {
    CHECK(std::fabs(f.at(0, j)) < 1e-9);
    CHECK(std::fabs(f.at(grid.n_lambda - 1, j) - eta0(f.x[j] - u0 * T)) <
          1e-6);
  }
}

TEST_CASE("rotational example matches its closed form") {
  const double eta0 = 1.0;
  PhiGrid grid;
  grid.x_min = -1.0;
  grid.x_max = 1.0;
  grid.n_x = 41;
  grid.n_lambda = 41;
  grid.seed_x_min = -9.0;
  grid.seed_x_max = 9.0;
  grid.n_seeds = 801;
  const double T = 2.0;
  const auto f = evolve_phi(
      [eta0](double, double x, double z) { return x * (z - 0.5 * eta0); },
      [eta0](double, double, double z) { return z * (eta0 - z); },
      [eta0](double, double l) { return l * eta0; }, T, grid, {1e-3, 5, 1e-6});
  REQUIRE(f.valid);
  double worst = 0.0;
  for (int l = 0; l < grid.n_lambda; ++l)
    for (int j = 0; j < grid.n_x; ++j)
      worst = std::max(worst,
                       std::fabs(f.at(l, j) - vorticity_phi(T, f.lambda[l])));
  CHECK(worst < 1e-6);
  // spot value: at e^{-t} = 1/2 and lambda = 1/2 the surface sits at 2/3
  CHECK(vorticity_phi(std::log(2.0), 0.5) == doctest::Approx(2.0 / 3.0));
  // monotone in lambda wherever valid
  for (int l = 0; l + 1 < grid.n_lambda; ++l)
    for (int j = 0; j < grid.n_x; ++j) CHECK(f.at(l + 1, j) > f.at(l, j));
}

TEST_CASE("initial surface must be strictly increasing in lambda") {
  PhiGrid grid;
  grid.seed_x_min = grid.x_min = 0.0;
  grid.seed_x_max = grid.x_max = 1.0;
  CHECK_THROWS_AS(
      evolve_phi([](double, double, double) { return 0.0; },
                 [](double, double, double) { return 0.0; },
                 [](double, double l) { return -l; }, 1.0, grid, {}),
      Error);
}

TEST_CASE("characteristic escape is reported") {
  PhiGrid grid;
  grid.x_min = -1.0;
  grid.x_max = 1.0;
  grid.seed_x_min = -1.0;
  grid.seed_x_max = 1.0;  // no padding: drift pushes the hull off the grid
  CHECK_THROWS_WITH_AS(
      evolve_phi([](double, double, double) { return 1.0; },
                 [](double, double, double) { return 0.0; },
                 [](double, double l) { return l; }, 1.0, grid, {1e-2, 5, 1e-6}),
      doctest::Contains("escaped"), Error);
}

TEST_CASE("Burgers-type flow: fold detection matches the closed-form time") {
  // u(z) = z, w = 0, phi0 = lambda (eta0 + (1-lambda) a(x)), a = -sin:
  // inf a' = -1 so the change of variable folds at T = 4
  const double eta0 = 2.0;
  PhiGrid grid;
  grid.x_min = 2.0;
  grid.x_max = 6.0;
  grid.n_x = 51;
  grid.n_lambda = 51;
  grid.seed_x_min = -8.0;
  grid.seed_x_max = 8.0;
  grid.n_seeds = 401;
  const auto f = evolve_phi(
      [](double, double, double z) { return z; },
      [](double, double, double) { return 0.0; },
      [eta0](double x, double l) {
        return l * (eta0 + (1.0 - l) * (-std::sin(x)));
      },
      4.5, grid, {5e-3, 5, 1e-6});
  CHECK(!f.valid);
  const double T = blowup_time(-1.0, eta0);
  CHECK(T == doctest::Approx(4.0));
  CHECK(std::fabs(f.blowup_time - T) <= 0.02 * T);
}

TEST_CASE("blowup_time formula") {
  CHECK(blowup_time(-1.0, 1.0) == doctest::Approx(4.0));
  CHECK(std::isinf(blowup_time(0.0, 1.0)));
  CHECK(std::isinf(blowup_time(0.5, 1.0)));
  CHECK(blowup_time(-4.0, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("map_back") {
  SUBCASE("single layer column") {
    SimState s;
    s.n_layers = 1;
    s.n_cells = 4;
    s.length = 4.0;
    s.gravity = 10.0;
    s.gamma = {1.0};
    s.zb = {0.1, 0.2, 0.3, 0.4};
    s.H = {1.0, 1.5, 2.0, 2.5};
    s.Q = {0.5, 0.75, 1.0, 1.25};
    const auto m = map_back(s);
    for (int j = 0; j < 4; ++j) {
      CHECK(m.eta[j] == doctest::Approx(s.zb[j] + s.H[j]));
      CHECK(m.velocity(s, j, 0.5 * (s.zb[j] + m.eta[j])) ==
            doctest::Approx(0.5));
    }
  }
  SUBCASE("two layers: interfaces by cumulative widths") {
    SimState s;
    s.n_layers = 2;
    s.n_cells = 1;
    s.length = 1.0;
    s.gravity = 10.0;
    s.gamma = {0.5, 0.5};
    s.zb = {0.0};
    s.H = {1.0, 3.0};
    s.Q = {0.0, 0.0};
    const auto m = map_back(s);
    CHECK(m.interfaces[0] == doctest::Approx(0.0));
    CHECK(m.interfaces[1] == doctest::Approx(0.5));
    CHECK(m.interfaces[2] == doctest::Approx(2.0));
    CHECK(m.eta[0] == doctest::Approx(2.0));
  }
  SUBCASE("round trip through the P0 projection is exact") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> hd(0.2, 2.0), ud(-1.0, 1.0);
    const int n = 5;
    std::vector<double> gamma{0.1, 0.2, 0.3, 0.25, 0.15};
    std::vector<double> u(n), h(n);
    for (int a = 0; a < n; ++a) {
      u[a] = ud(rng);
      h[a] = hd(rng);
    }
    // piecewise-constant-in-lambda fields of the mapped state
    std::vector<double> edges(n + 1, 0.0);
    for (int a = 0; a < n; ++a) edges[a + 1] = edges[a] + gamma[a];
    auto layer_of = [&](double lam) {
      for (int a = 0; a < n; ++a)
        if (lam <= edges[a + 1]) return a;
      return n - 1;
    };
    ContinuousProfile pw([&](double lam) { return u[layer_of(lam)]; },
                         [&](double lam) { return h[layer_of(lam)]; }, 10.0);
    const LayerState ls = project_p0(pw, gamma);
    for (int a = 0; a < n; ++a) {
      CHECK(ls.u[a] == doctest::Approx(u[a]).epsilon(1e-13));
      CHECK(ls.h[a] == doctest::Approx(h[a]).epsilon(1e-13));
    }
  }
}

TEST_CASE("vorticity samples") {
  SUBCASE("convex benchmark has omega = 1 + lambda") {
    auto p = preset_profile(Preset::convex_benchmark, {}, 10.0);
    const auto w = vorticity_field(p, 64);
    for (size_t i = 0; i < w.size(); ++i) {
      const double lam = (i + 1) / 65.0;
      CHECK(w[i] == doctest::Approx(1.0 + lam).epsilon(1e-7));
    }
  }
  SUBCASE("constant velocity has zero vorticity") {
    auto p = preset_profile(Preset::constant, std::vector{2.0, 1.0}, 10.0);
    for (double w : vorticity_field(p, 16)) CHECK(std::fabs(w) < 1e-12);
  }
  SUBCASE("discrete interface values") {
    LayerState ls;
    ls.gamma = {0.5, 0.5};
    ls.u = {0.0, 1.0};
    ls.h = {1.0, 1.0};
    const auto w = vorticity_field(ls);
    REQUIRE(w.size() == 1);
    CHECK(w[0] == doctest::Approx(2.0));  // du=1 over dlam=1/2, h=1
  }
}

TEST_CASE("vorticity transport residual decays under refinement") {
  // smooth two-layer run; omega per cell from layer differences obeys
  // d_t omega + u d_x omega = 0 up to discretization error
  auto residual = [&](int m) {
    const double L = 2.0 * M_PI;
    auto make = [&]() {
      return init_from_profiles(
          [](double x, double l) { return 0.2 * std::sin(x) + 0.3 * l; },
          [](double x, double) { return 1.0 + 0.05 * std::cos(x); }, nullptr,
          L, m, std::vector<double>{0.5, 0.5}, 10.0);
    };
    SimState s = make();
    const double T = 0.2;
    while (s.time < T) step(s, 0.45, T - s.time);
    SimState s0 = s;
    step(s, 0.45);
    SimState s1 = s;
    step(s, 0.45);
    SimState s2 = s;
    auto omega = [&](const SimState& st, int j) {
      return vorticity_field(st.layer_state_at(j))[0];
    };
    auto ubar = [&](const SimState& st, int j) {
      return 0.5 * (st.u_at(0, j) + st.u_at(1, j));
    };
    double worst = 0.0;
    for (int j = 0; j < m; ++j) {
      const int jl = (j + m - 1) % m, jr = (j + 1) % m;
      const double wt = (omega(s2, j) - omega(s0, j)) / (s2.time - s0.time);
      const double wx = (omega(s1, jr) - omega(s1, jl)) / (2.0 * s1.dx());
      worst = std::max(worst, std::fabs(wt + ubar(s1, j) * wx));
    }
    return worst;
  };
  const double r1 = residual(80);
  const double r2 = residual(160);
  CHECK(r2 < r1);
}
