#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>

#include "labelsearch/core.hpp"

namespace labelsearch {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Standard error of the slope from the residuals; 0 with fewer than 3 points.
  double slope_stderr = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
inline LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractViolation("least squares: x and y lengths differ");
  if (x.size() < 2) throw ContractViolation("least squares needs at least two points");
  const auto k = static_cast<double>(x.size());
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / k;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  if (sxx == 0.0) throw ContractViolation("least squares: x values are all equal");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  if (x.size() > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ssr += r * r;
    }
    fit.slope_stderr = std::sqrt(ssr / (k - 2.0) / sxx);
  }
  return fit;
}

/// Sample coefficient of variation (stddev / mean).
inline double coefficient_of_variation(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const auto k = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / k;
  double ss = 0.0;
  for (double e : v) ss += (e - mean) * (e - mean);
  return std::sqrt(ss / (k - 1.0)) / mean;
}

} // namespace labelsearch
