#pragma once

#include <string>
#include <vector>

namespace causalsort {

// Minimal self-contained SVG output for experiment results; no external
// plotting dependency.

struct SvgSeries {
  std::string label;
  std::string color;  // e.g. "#1f77b4"
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> band_lo;  // optional CI band, empty to skip
  std::vector<double> band_hi;
};

void write_svg_line_plot(const std::string& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         const std::vector<SvgSeries>& series,
                         bool log_y = false);

// values[row][col]; rows bottom-up on the y axis.
void write_svg_heatmap(const std::string& path, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       const std::vector<std::string>& x_ticks,
                       const std::vector<std::string>& y_ticks,
                       const std::vector<std::vector<double>>& values,
                       double value_min = 0.0, double value_max = 1.0);

}  // namespace causalsort
