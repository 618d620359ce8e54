#include "causalsort/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace causalsort {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

std::string fmt_tick(double v) {
  std::ostringstream s;
  if (std::abs(v) >= 1e5 || (v != 0 && std::abs(v) < 1e-3)) {
    s.precision(1);
    s << std::scientific << v;
  } else {
    s.precision(4);
    s << v;
  }
  return s.str();
}

std::string escape_xml(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  std::vector<double> ticks;
  if (!(hi > lo)) {
    ticks.push_back(lo);
    return ticks;
  }
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(t);
  }
  return ticks;
}

}  // namespace

void write_svg_line_plot(const std::string& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         const std::vector<SvgSeries>& series, bool log_y) {
  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      double lo = s.band_lo.empty() ? s.y[i] : s.band_lo[i];
      double hi = s.band_hi.empty() ? s.y[i] : s.band_hi[i];
      if (log_y) {
        lo = lo > 0 ? lo : s.y[i];
        hi = hi > 0 ? hi : s.y[i];
      }
      y_min = std::min(y_min, lo);
      y_max = std::max(y_max, hi);
    }
  }
  if (x_min > x_max) {
    x_min = 0;
    x_max = 1;
    y_min = 0;
    y_max = 1;
  }
  if (log_y) {
    y_min = std::log10(std::max(y_min, 1e-300));
    y_max = std::log10(std::max(y_max, 1e-300));
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;
  const double x_pad = 0.02 * (x_max - x_min), y_pad = 0.05 * (y_max - y_min);
  x_min -= x_pad;
  x_max += x_pad;
  y_min -= y_pad;
  y_max += y_pad;

  auto px = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kWidth - kLeft - kRight);
  };
  auto py = [&](double y) {
    if (log_y) y = std::log10(std::max(y, 1e-300));
    return kHeight - kBottom - (y - y_min) / (y_max - y_min) * (kHeight - kTop - kBottom);
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
      << kHeight << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << kWidth / 2 << "' y='22' text-anchor='middle' font-size='15' "
         "font-family='sans-serif'>"
      << escape_xml(title) << "</text>\n";

  for (const double t : nice_ticks(x_min + x_pad, x_max - x_pad)) {
    out << "<line x1='" << px(t) << "' y1='" << kTop << "' x2='" << px(t) << "' y2='"
        << kHeight - kBottom << "' stroke='#dddddd'/>\n"
        << "<text x='" << px(t) << "' y='" << kHeight - kBottom + 18
        << "' text-anchor='middle' font-size='11' font-family='sans-serif'>"
        << fmt_tick(t) << "</text>\n";
  }
  const double tick_lo = log_y ? std::pow(10, y_min + y_pad) : y_min + y_pad;
  const double tick_hi = log_y ? std::pow(10, y_max - y_pad) : y_max - y_pad;
  std::vector<double> yticks;
  if (log_y) {
    for (double e = std::floor(std::log10(tick_lo)); e <= std::ceil(std::log10(tick_hi)); ++e) {
      yticks.push_back(std::pow(10, e));
    }
  } else {
    yticks = nice_ticks(tick_lo, tick_hi);
  }
  for (const double t : yticks) {
    out << "<line x1='" << kLeft << "' y1='" << py(t) << "' x2='" << kWidth - kRight
        << "' y2='" << py(t) << "' stroke='#dddddd'/>\n"
        << "<text x='" << kLeft - 6 << "' y='" << py(t) + 4
        << "' text-anchor='end' font-size='11' font-family='sans-serif'>" << fmt_tick(t)
        << "</text>\n";
  }
  out << "<rect x='" << kLeft << "' y='" << kTop << "' width='"
      << kWidth - kLeft - kRight << "' height='" << kHeight - kTop - kBottom
      << "' fill='none' stroke='black'/>\n"
      << "<text x='" << kWidth / 2 << "' y='" << kHeight - 14
      << "' text-anchor='middle' font-size='13' font-family='sans-serif'>"
      << escape_xml(x_label) << "</text>\n"
      << "<text x='16' y='" << kHeight / 2
      << "' text-anchor='middle' font-size='13' font-family='sans-serif' "
         "transform='rotate(-90 16 "
      << kHeight / 2 << ")'>" << escape_xml(y_label) << "</text>\n";

  double legend_y = kTop + 14;
  for (const auto& s : series) {
    if (!s.band_lo.empty() && s.band_lo.size() == s.x.size()) {
      out << "<path d='";
      for (size_t i = 0; i < s.x.size(); ++i) {
        out << (i == 0 ? "M" : "L") << px(s.x[i]) << " " << py(s.band_hi[i]) << " ";
      }
      for (size_t i = s.x.size(); i-- > 0;) {
        out << "L" << px(s.x[i]) << " " << py(s.band_lo[i]) << " ";
      }
      out << "Z' fill='" << s.color << "' opacity='0.15'/>\n";
    }
    out << "<path d='";
    for (size_t i = 0; i < s.x.size(); ++i) {
      out << (i == 0 ? "M" : "L") << px(s.x[i]) << " " << py(s.y[i]) << " ";
    }
    out << "' fill='none' stroke='" << s.color << "' stroke-width='1.8'/>\n";
    for (size_t i = 0; i < s.x.size(); ++i) {
      out << "<circle cx='" << px(s.x[i]) << "' cy='" << py(s.y[i])
          << "' r='2.4' fill='" << s.color << "'/>\n";
    }
    out << "<line x1='" << kWidth - 190 << "' y1='" << legend_y << "' x2='"
        << kWidth - 165 << "' y2='" << legend_y << "' stroke='" << s.color
        << "' stroke-width='2'/>\n"
        << "<text x='" << kWidth - 160 << "' y='" << legend_y + 4
        << "' font-size='12' font-family='sans-serif'>" << escape_xml(s.label)
        << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
}

void write_svg_heatmap(const std::string& path, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       const std::vector<std::string>& x_ticks,
                       const std::vector<std::string>& y_ticks,
                       const std::vector<std::vector<double>>& values,
                       double value_min, double value_max) {
  const size_t rows = values.size();
  const size_t cols = rows ? values[0].size() : 0;
  if (rows == 0 || cols == 0) throw std::invalid_argument("heatmap: empty grid");

  const double cell_w = (kWidth - kLeft - kRight - 60) / cols;
  const double cell_h = (kHeight - kTop - kBottom) / rows;

  auto color = [&](double v) {
    double u = (v - value_min) / std::max(1e-12, value_max - value_min);
    u = std::clamp(u, 0.0, 1.0);
    // white -> blue ramp
    const int r = static_cast<int>(255 - 205 * u);
    const int g = static_cast<int>(255 - 135 * u);
    const int b = 255;
    std::ostringstream s;
    s << "rgb(" << r << "," << g << "," << b << ")";
    return s.str();
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
      << kHeight << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << kWidth / 2 << "' y='22' text-anchor='middle' font-size='15' "
         "font-family='sans-serif'>"
      << escape_xml(title) << "</text>\n";

  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      const double x = kLeft + c * cell_w;
      const double y = kHeight - kBottom - (r + 1) * cell_h;  // rows bottom-up
      out << "<rect x='" << x << "' y='" << y << "' width='" << cell_w << "' height='"
          << cell_h << "' fill='" << color(values[r][c]) << "' stroke='#999999'/>\n"
          << "<text x='" << x + cell_w / 2 << "' y='" << y + cell_h / 2 + 4
          << "' text-anchor='middle' font-size='11' font-family='sans-serif'>"
          << fmt_tick(values[r][c]) << "</text>\n";
    }
  }
  for (size_t c = 0; c < cols && c < x_ticks.size(); ++c) {
    out << "<text x='" << kLeft + (c + 0.5) * cell_w << "' y='" << kHeight - kBottom + 18
        << "' text-anchor='middle' font-size='11' font-family='sans-serif'>"
        << escape_xml(x_ticks[c]) << "</text>\n";
  }
  for (size_t r = 0; r < rows && r < y_ticks.size(); ++r) {
    out << "<text x='" << kLeft - 6 << "' y='"
        << kHeight - kBottom - (r + 0.5) * cell_h + 4
        << "' text-anchor='end' font-size='11' font-family='sans-serif'>"
        << escape_xml(y_ticks[r]) << "</text>\n";
  }
  out << "<text x='" << kWidth / 2 << "' y='" << kHeight - 14
      << "' text-anchor='middle' font-size='13' font-family='sans-serif'>"
      << escape_xml(x_label) << "</text>\n"
      << "<text x='16' y='" << kHeight / 2
      << "' text-anchor='middle' font-size='13' font-family='sans-serif' "
         "transform='rotate(-90 16 "
      << kHeight / 2 << ")'>" << escape_xml(y_label) << "</text>\n"
      << "</svg>\n";
}

}  // namespace causalsort
