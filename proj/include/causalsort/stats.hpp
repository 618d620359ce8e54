#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

namespace causalsort {

// One moving-window aggregate: mean of y over records whose x falls within
// width/2 of the center, with a normal-approximation 95% CI of the mean.
struct CurvePoint {
  double center = 0.0;
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  int count = 0;
};

inline std::vector<double> default_window_centers() {
  std::vector<double> centers;
  for (int k = 1; k <= 19; ++k) centers.push_back(k * 0.05);
  return centers;
}

inline std::vector<CurvePoint> window_average(std::span<const double> x,
                                              std::span<const double> y,
                                              double width,
                                              std::span<const double> centers) {
  std::vector<CurvePoint> curve;
  const double half = width / 2.0;
  for (const double c : centers) {
    double sum = 0.0, sum_sq = 0.0;
    int count = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      if (std::abs(x[i] - c) <= half) {
        sum += y[i];
        sum_sq += y[i] * y[i];
        ++count;
      }
    }
    if (count == 0) continue;  // empty windows are omitted
    CurvePoint p;
    p.center = c;
    p.count = count;
    p.mean = sum / count;
    double half_width = 0.0;
    if (count > 1) {
      const double var = std::max(0.0, (sum_sq - count * p.mean * p.mean) / (count - 1));
      half_width = 1.959963984540054 * std::sqrt(var / count);
    }
    p.ci_lo = p.mean - half_width;
    p.ci_hi = p.mean + half_width;
    curve.push_back(p);
  }
  return curve;
}

// Ranks with ties assigned their average rank.
inline std::vector<double> average_ranks(std::span<const double> v) {
  const size_t n = v.size();
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0 || syy <= 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

inline double spearman_correlation(std::span<const double> x, std::span<const double> y) {
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson_correlation(rx, ry);
}

}  // namespace causalsort
