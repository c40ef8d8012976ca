#include "hydrospec/profiles.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "hydrospec/errors.hpp"
#include "hydrospec/quadrature.hpp"

namespace hydrospec {

namespace {

constexpr int kSampleGrid = 10000;  // metadata verification grid
constexpr double kGammaSumTol = 1e-14;

} // namespace

ContinuousProfile::ContinuousProfile(std::function<double(double)> u,
                                     std::function<double(double)> h,
                                     double gravity, ProfileFlags flags)
    : u_(std::move(u)), h_(std::move(h)), gravity_(gravity),
      flags_(std::move(flags)), total_depth_(0.0) {
  if (!(gravity_ > 0.0))
    fail(ErrorCode::invalid_argument, "profile: gravity must be positive");
  if (!u_ || !h_)
    fail(ErrorCode::invalid_argument, "profile: missing u or h function");

  double prev_u = u_(0.0);
  int mono_sign = 0;
  for (int i = 0; i <= kSampleGrid; ++i) {
    const double lam = static_cast<double>(i) / kSampleGrid;
    const double hv = h_(lam);
    if (!(hv > 0.0) || !std::isfinite(hv))
      fail(ErrorCode::invalid_argument,
           "profile: thickness must be positive (violated near lambda=" +
               std::to_string(lam) + ")");
    if (i > 0 && flags_.strictly_monotone.value_or(false)) {
      const double uv = u_(lam);
      const double d = uv - prev_u;
      if (d != 0.0) {
        const int s = d > 0.0 ? 1 : -1;
        if (mono_sign == 0) mono_sign = s;
        else if (mono_sign != s)
          fail(ErrorCode::invalid_argument,
               "profile: monotonicity flag asserted but sampled differences "
               "change sign near lambda=" + std::to_string(lam));
      }
      prev_u = uv;
    }
  }

  const auto q = integrate([this](double l) { return h_(l); }, 0.0, 1.0,
                           {1e-13, 1e-13, 60});
  total_depth_ = q.value;
}

double LayerState::depth() const {
  double s = 0.0;
  for (size_t i = 0; i < gamma.size(); ++i) s += gamma[i] * h[i];
  return s;
}

void LayerState::validate() const {
  const size_t n = gamma.size();
  if (n == 0 || u.size() != n || h.size() != n)
    fail(ErrorCode::invalid_argument, "layer state: inconsistent dimensions");
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (!(gamma[i] > 0.0))
      fail(ErrorCode::invalid_argument,
           "layer state: widths must be positive");
    if (!(h[i] > 0.0))
      fail(ErrorCode::invalid_argument,
           "layer state: thicknesses must be positive");
    s += gamma[i];
  }
  if (std::fabs(s - 1.0) > kGammaSumTol * n)
    fail(ErrorCode::invalid_argument,
         "layer state: widths must sum to 1 (got " + std::to_string(s) + ")");
}

Preset preset_from_name(const std::string& name) {
  if (name == "constant") return Preset::constant;
  if (name == "affine") return Preset::affine;
  if (name == "power_quarter") return Preset::power_quarter;
  if (name == "tanh_shear") return Preset::tanh_shear;
  if (name == "convex_benchmark") return Preset::convex_benchmark;
  fail(ErrorCode::invalid_argument, "unknown profile preset '" + name + "'");
}

ContinuousProfile preset_profile(Preset name, std::span<const double> params,
                                 double gravity) {
  auto need = [&](size_t n, const char* what) {
    if (params.size() != n)
      fail(ErrorCode::invalid_argument,
           std::string("preset ") + what + ": expected " + std::to_string(n) +
               " parameter(s), got " + std::to_string(params.size()));
  };
  switch (name) {
    case Preset::constant: {
      need(2, "constant");
      const double u0 = params[0], h0 = params[1];
      return ContinuousProfile([u0](double) { return u0; },
                               [h0](double) { return h0; }, gravity,
                               {false, std::nullopt, std::nullopt});
    }
    case Preset::affine: {
      need(3, "affine");
      const double a = params[0], b = params[1], h0 = params[2];
      return ContinuousProfile(
          [a, b](double l) { return a + (b - a) * l; },
          [h0](double) { return h0; }, gravity,
          {a != b, 1.0, std::fabs(b - a)});
    }
    case Preset::power_quarter: {
      need(1, "power_quarter");
      const double K = params[0];
      if (!(K > 0.0))
        fail(ErrorCode::invalid_argument, "power_quarter: K must be positive");
      return ContinuousProfile(
          [K](double l) { return K * std::pow(l, 0.25); },
          [](double) { return 1.0; }, gravity, {true, 0.25, K});
    }
    case Preset::tanh_shear: {
      need(2, "tanh_shear");
      const double a = params[0], b = params[1];
      if (!(b > 0.0))
        fail(ErrorCode::invalid_argument, "tanh_shear: b must be positive");
      return ContinuousProfile(
          [a, b](double l) { return a * std::tanh(b * (2.0 * l - 1.0)); },
          [gravity](double) { return 1.0 / gravity; }, gravity,
          {a != 0.0, 1.0, std::fabs(2.0 * a * b)});
    }
    case Preset::convex_benchmark: {
      need(0, "convex_benchmark");
      return ContinuousProfile(
          [](double l) { return l + 0.5 * l * l; }, [](double) { return 1.0; },
          gravity, {true, 1.0, 2.0});
    }
  }
  fail(ErrorCode::invalid_argument, "unknown preset enumerator");
}

ContinuousProfile load_tabulated(const std::string& path, double gravity) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::parse, "cannot open profile file '" + path + "'");

  std::string line;
  if (!std::getline(in, line))
    fail(ErrorCode::parse, "empty profile file '" + path + "'");
  // tolerate whitespace and an optional BOM on the header
  std::string hdr;
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c)) && (unsigned char)c < 0x80)
      hdr += c;
  if (hdr != "lambda,u,h")
    fail(ErrorCode::parse, "profile CSV must start with header 'lambda,u,h'");

  std::vector<double> lam, uv, hv;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    double vals[3];
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(ss, tok, ','))
        fail(ErrorCode::parse, "profile CSV line " + std::to_string(line_no) +
                                   ": expected 3 comma-separated values");
      try {
        size_t pos = 0;
        vals[k] = std::stod(tok, &pos);
      } catch (const std::exception&) {
        fail(ErrorCode::parse, "profile CSV line " + std::to_string(line_no) +
                                   ": bad number '" + tok + "'");
      }
    }
    if (!(vals[2] > 0.0))
      fail(ErrorCode::invalid_argument,
           "profile CSV line " + std::to_string(line_no) +
               ": thickness must be positive");
    if (!lam.empty() && !(vals[0] > lam.back()))
      fail(ErrorCode::invalid_argument,
           "profile CSV line " + std::to_string(line_no) +
               ": lambda must be strictly increasing");
    lam.push_back(vals[0]);
    uv.push_back(vals[1]);
    hv.push_back(vals[2]);
  }
  if (lam.size() < 2)
    fail(ErrorCode::invalid_argument, "profile CSV: need >= 2 samples");
  if (std::fabs(lam.front()) > 1e-12 || std::fabs(lam.back() - 1.0) > 1e-12)
    fail(ErrorCode::invalid_argument,
         "profile CSV: lambda must cover [0,1] with both endpoints present");

  auto interp = [](std::vector<double> xs, std::vector<double> ys) {
    return [xs = std::move(xs), ys = std::move(ys)](double x) {
      if (x <= xs.front()) return ys.front();
      if (x >= xs.back()) return ys.back();
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      const size_t j = static_cast<size_t>(it - xs.begin());
      const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
      return ys[j - 1] + t * (ys[j] - ys[j - 1]);
    };
  };
  return ContinuousProfile(interp(lam, uv), interp(lam, hv), gravity);
}

LayerState project_p0(const ContinuousProfile& profile,
                      std::span<const double> gamma) {
  const size_t n = gamma.size();
  if (n == 0)
    fail(ErrorCode::invalid_argument, "project_p0: empty width vector");
  double s = 0.0;
  for (double gi : gamma) {
    if (!(gi > 0.0))
      fail(ErrorCode::invalid_argument, "project_p0: widths must be positive");
    s += gi;
  }
  if (std::fabs(s - 1.0) > kGammaSumTol * static_cast<double>(n))
    fail(ErrorCode::invalid_argument, "project_p0: widths must sum to 1");

  LayerState st;
  st.gamma.assign(gamma.begin(), gamma.end());
  st.u.resize(n);
  st.h.resize(n);

  const QuadOptions opt{1e-14, 1e-12, 60};
  double lo = 0.0;
  for (size_t a = 0; a < n; ++a) {
    const double hi = (a + 1 == n) ? 1.0 : lo + gamma[a];
    const auto qu =
        integrate([&](double l) { return profile.u(l); }, lo, hi, opt);
    const auto qh =
        integrate([&](double l) { return profile.h(l); }, lo, hi, opt);
    if (!qu.converged || !qh.converged)
      fail(ErrorCode::numerical,
           "project_p0: quadrature did not converge in layer " +
               std::to_string(a) + " (worst point " +
               std::to_string(qu.converged ? qh.worst_point : qu.worst_point) +
               ")");
    st.u[a] = qu.value / gamma[a];
    st.h[a] = qh.value / gamma[a];
    lo = hi;
  }
  st.validate();
  return st;
}

LayerState project_p0_uniform(const ContinuousProfile& profile, int n_layers) {
  if (n_layers <= 0)
    fail(ErrorCode::invalid_argument, "project_p0: n_layers must be positive");
  std::vector<double> gamma(static_cast<size_t>(n_layers),
                            1.0 / static_cast<double>(n_layers));
  return project_p0(profile, gamma);
}

} // namespace hydrospec
