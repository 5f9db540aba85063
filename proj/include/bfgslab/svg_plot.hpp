#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace bfgslab {

struct SvgSeries {
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  double y_floor = 1e-16;           // values below this are clamped for the log axis
  int max_points_per_series = 500;  // longer series are downsampled by stride
};

/// Self-contained semilog plot (linear x, log10 y): decade grid lines, tick
/// labels, one faint polyline per series and an optional bold reference line.
void write_semilog_svg(const std::filesystem::path& path, const std::vector<SvgSeries>& series,
                       const SvgSeries* reference, const SvgOptions& options);

}  // namespace bfgslab
