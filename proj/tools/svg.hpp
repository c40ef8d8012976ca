// Minimal static SVG plotter for the CLI: axes, polylines, scatter markers,
// translucent shapes.  Emits plain SVG 1.1 documents.
#ifndef HYDROSPEC_CLI_SVG_HPP
#define HYDROSPEC_CLI_SVG_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace svgplot {

struct Range {
  double lo = 0.0, hi = 1.0;
  void expand(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double span() const { return hi - lo; }
};

class Canvas {
public:
  Canvas(double x_lo, double x_hi, double y_lo, double y_hi, bool log_x = false,
         bool log_y = false, int width = 640, int height = 480)
      : x_{x_lo, x_hi}, y_{y_lo, y_hi}, logx_(log_x), logy_(log_y), w_(width),
        h_(height) {
    if (x_.span() <= 0.0) x_.hi = x_.lo + 1.0;
    if (y_.span() <= 0.0) y_.hi = y_.lo + 1.0;
  }

  void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                const std::string& color, double width = 1.5,
                const std::string& dash = "") {
    std::ostringstream p;
    for (size_t i = 0; i < xs.size(); ++i)
      p << (i ? " " : "") << px(xs[i]) << ',' << py(ys[i]);
    body_ << "<polyline fill='none' stroke='" << color << "' stroke-width='"
          << width << "'";
    if (!dash.empty()) body_ << " stroke-dasharray='" << dash << "'";
    body_ << " points='" << p.str() << "'/>\n";
  }

  void scatter(const std::vector<double>& xs, const std::vector<double>& ys,
               const std::string& color, double r = 3.0) {
    for (size_t i = 0; i < xs.size(); ++i)
      body_ << "<circle cx='" << px(xs[i]) << "' cy='" << py(ys[i]) << "' r='"
            << r << "' fill='" << color << "'/>\n";
  }

  // data-space circle (drawn as ellipse under the axis scaling)
  void disk(double cx, double cy, double radius, const std::string& color,
            double opacity) {
    body_ << "<ellipse cx='" << px(cx) << "' cy='" << py(cy) << "' rx='"
          << std::fabs(px(cx + radius) - px(cx)) << "' ry='"
          << std::fabs(py(cy + radius) - py(cy)) << "' fill='" << color
          << "' fill-opacity='" << opacity << "'/>\n";
  }

  void rect(double x0, double x1, double y0, double y1,
            const std::string& color, double opacity) {
    const double a = px(x0), b = px(x1);
    const double c = py(y1), d = py(y0);
    body_ << "<rect x='" << std::min(a, b) << "' y='" << std::min(c, d)
          << "' width='" << std::fabs(b - a) << "' height='"
          << std::fabs(d - c) << "' fill='" << color << "' fill-opacity='"
          << opacity << "'/>\n";
  }

  void hseg(double x0, double x1, double y, const std::string& color,
            double width = 3.0) {
    body_ << "<line x1='" << px(x0) << "' y1='" << py(y) << "' x2='" << px(x1)
          << "' y2='" << py(y) << "' stroke='" << color << "' stroke-width='"
          << width << "'/>\n";
  }

  void text(double x, double y, const std::string& s, int size = 12,
            const std::string& color = "#333") {
    body_ << "<text x='" << px(x) << "' y='" << py(y) << "' font-size='"
          << size << "' fill='" << color << "'>" << s << "</text>\n";
  }

  void title(const std::string& s) { title_ = s; }

  void write(const std::string& path, const std::string& x_label = "",
             const std::string& y_label = "") {
    std::ofstream out(path);
    out << "<?xml version='1.0' encoding='UTF-8'?>\n"
        << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w_
        << "' height='" << h_ << "' viewBox='0 0 " << w_ << ' ' << h_
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    // frame
    out << "<rect x='" << kMargin << "' y='" << kMargin << "' width='"
        << w_ - 2 * kMargin << "' height='" << h_ - 2 * kMargin
        << "' fill='none' stroke='#999'/>\n";
    axis_ticks(out);
    if (!title_.empty())
      out << "<text x='" << w_ / 2 << "' y='18' font-size='14' fill='#111' "
             "text-anchor='middle'>" << title_ << "</text>\n";
    if (!x_label.empty())
      out << "<text x='" << w_ / 2 << "' y='" << h_ - 6
          << "' font-size='12' fill='#111' text-anchor='middle'>" << x_label
          << "</text>\n";
    if (!y_label.empty())
      out << "<text x='14' y='" << h_ / 2
          << "' font-size='12' fill='#111' text-anchor='middle' "
             "transform='rotate(-90 14 " << h_ / 2 << ")'>" << y_label
          << "</text>\n";
    out << body_.str() << "</svg>\n";
  }

private:
  static constexpr double kMargin = 48.0;

  double tx(double v) const { return logx_ ? std::log10(v) : v; }
  double ty(double v) const { return logy_ ? std::log10(v) : v; }
  double px(double v) const {
    const double a = tx(x_.lo), b = tx(x_.hi);
    return kMargin + (tx(v) - a) / (b - a) * (w_ - 2 * kMargin);
  }
  double py(double v) const {
    const double a = ty(y_.lo), b = ty(y_.hi);
    return h_ - kMargin - (ty(v) - a) / (b - a) * (h_ - 2 * kMargin);
  }

  void axis_ticks(std::ofstream& out) {
    auto emit = [&](double v, bool is_x) {
      std::ostringstream lbl;
      lbl.precision(4);
      lbl << v;
      if (is_x) {
        out << "<line x1='" << px(v) << "' y1='" << h_ - kMargin << "' x2='"
            << px(v) << "' y2='" << h_ - kMargin + 5
            << "' stroke='#999'/>\n<text x='" << px(v) << "' y='"
            << h_ - kMargin + 18
            << "' font-size='10' fill='#333' text-anchor='middle'>"
            << lbl.str() << "</text>\n";
      } else {
        out << "<line x1='" << kMargin - 5 << "' y1='" << py(v) << "' x2='"
            << kMargin << "' y2='" << py(v)
            << "' stroke='#999'/>\n<text x='" << kMargin - 8 << "' y='"
            << py(v) + 3
            << "' font-size='10' fill='#333' text-anchor='end'>" << lbl.str()
            << "</text>\n";
      }
    };
    auto ticks = [&](const Range& r, bool logscale) {
      std::vector<double> t;
      if (logscale) {
        const int e0 = static_cast<int>(std::floor(std::log10(r.lo)));
        const int e1 = static_cast<int>(std::ceil(std::log10(r.hi)));
        for (int e = e0; e <= e1; ++e) {
          const double v = std::pow(10.0, e);
          if (v >= r.lo * 0.999 && v <= r.hi * 1.001) t.push_back(v);
        }
      } else {
        const double raw = r.span() / 6.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0})
          if (mag * m >= raw) { step = mag * m; break; }
        const double start = std::ceil(r.lo / step) * step;
        for (double v = start; v <= r.hi + 1e-12 * r.span(); v += step)
          t.push_back(std::fabs(v) < 1e-12 * r.span() ? 0.0 : v);
      }
      return t;
    };
    for (double v : ticks(x_, logx_)) emit(v, true);
    for (double v : ticks(y_, logy_)) emit(v, false);
  }

  Range x_, y_;
  bool logx_, logy_;
  int w_, h_;
  std::ostringstream body_;
  std::string title_;
};

} // namespace svgplot

#endif
