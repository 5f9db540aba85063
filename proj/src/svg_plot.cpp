#include "bfgslab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace bfgslab {

namespace {

constexpr double kWidth = 900.0, kHeight = 600.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// A tick spacing of the form {1,2,5}*10^m giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mult * mag >= raw) return mult * mag;
  }
  return 10.0 * mag;
}

}  // namespace

void write_semilog_svg(const std::filesystem::path& path, const std::vector<SvgSeries>& series,
                       const SvgSeries* reference, const SvgOptions& options) {
  double x_max = 0.0;
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = 0.0;
  auto scan = [&](const SvgSeries& s) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x_max = std::max(x_max, s.x[i]);
      const double y = std::max(s.y[i], options.y_floor);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  };
  for (const SvgSeries& s : series) scan(s);
  if (reference) scan(*reference);
  if (!(x_max > 0.0) || !(y_max > 0.0)) {
    x_max = 1.0;
    y_min = options.y_floor;
    y_max = 1.0;
  }

  const double log_hi = std::ceil(std::log10(y_max));
  const double log_lo = std::floor(std::log10(std::max(y_min, options.y_floor)));
  const double log_span = std::max(log_hi - log_lo, 1.0);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  auto px = [&](double x) { return kLeft + plot_w * (x / x_max); };
  auto py = [&](double y) {
    const double ly = std::log10(std::max(y, options.y_floor));
    return kTop + plot_h * (log_hi - ly) / log_span;
  };

  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
     << "' viewBox='0 0 " << kWidth << ' ' << kHeight << "'>\n"
     << "<rect width='100%' height='100%' fill='white'/>\n";

  // Decade grid; label every decade unless that gets crowded.
  const int decades = static_cast<int>(log_hi - log_lo);
  const int label_stride = decades > 8 ? 2 : 1;
  for (int e = 0; e <= decades; ++e) {
    const double ly = log_hi - e;
    const double y = py(std::pow(10.0, ly));
    os << "<line x1='" << kLeft << "' y1='" << y << "' x2='" << kWidth - kRight << "' y2='" << y
       << "' stroke='#dddddd' stroke-width='1'/>\n";
    if (e % label_stride == 0)
      os << "<text x='" << kLeft - 8 << "' y='" << y + 4
         << "' font-size='12' text-anchor='end' fill='#333333'>1e" << static_cast<int>(ly)
         << "</text>\n";
  }
  const double x_step = nice_step(x_max, 6);
  for (double xv = 0.0; xv <= x_max * (1.0 + 1e-9); xv += x_step) {
    const double x = px(xv);
    os << "<line x1='" << x << "' y1='" << kTop << "' x2='" << x << "' y2='"
       << kHeight - kBottom << "' stroke='#eeeeee' stroke-width='1'/>\n"
       << "<text x='" << x << "' y='" << kHeight - kBottom + 18
       << "' font-size='12' text-anchor='middle' fill='#333333'>" << tick_label(xv)
       << "</text>\n";
  }
  os << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << plot_w << "' height='" << plot_h
     << "' fill='none' stroke='#333333' stroke-width='1'/>\n";

  auto polyline = [&](const SvgSeries& s, const char* style) {
    const int n = static_cast<int>(s.x.size());
    if (n < 2) return;
    const int stride = std::max(1, (n + options.max_points_per_series - 1) /
                                       options.max_points_per_series);
    os << "<polyline fill='none' " << style << " points='";
    for (int i = 0; i < n; i += stride)
      os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    if ((n - 1) % stride != 0) os << px(s.x[n - 1]) << ',' << py(s.y[n - 1]);
    os << "'/>\n";
  };

  for (const SvgSeries& s : series)
    polyline(s, "stroke='#3b6bc7' stroke-opacity='0.18' stroke-width='0.8'");
  if (reference) polyline(*reference, "stroke='black' stroke-width='2.5'");

  os << "<text x='" << kWidth / 2 << "' y='22' font-size='15' text-anchor='middle'>"
     << options.title << "</text>\n"
     << "<text x='" << kWidth / 2 << "' y='" << kHeight - 12
     << "' font-size='13' text-anchor='middle'>" << options.x_label << "</text>\n"
     << "<text x='16' y='" << kHeight / 2 << "' font-size='13' text-anchor='middle' "
     << "transform='rotate(-90 16 " << kHeight / 2 << ")'>" << options.y_label << "</text>\n"
     << "</svg>\n";
}

}  // namespace bfgslab
