// fit.hpp - least-squares slopes on log-log data and envelope constants.

#ifndef LCHI_FIT_HPP
#define LCHI_FIT_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace lchi {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  // log y = intercept + slope * log x
  int points = 0;          // points actually used (x > 0, y > 0)
};

/// Ordinary least squares of log y on log x, skipping non-positive entries.
inline LogLogFit loglog_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("loglog_fit: size mismatch");
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("loglog_fit: slope undefined with fewer than two usable points");
  const double den = n * sxx - sx * sx;
  if (den <= 0.0) throw std::invalid_argument("loglog_fit: abscissae must not all coincide");
  LogLogFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.points = n;
  return fit;
}

/// Smallest C with y_i <= C * x_i^exponent on the grid.
inline double envelope_constant(std::span<const double> xs, std::span<const double> ys, double exponent) {
  double c = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) c = std::max(c, ys[i] / std::pow(xs[i], exponent));
  return c;
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty input");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// n points from lo to hi, equally spaced in log.
inline std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw std::invalid_argument("geometric_grid: need 0 < lo <= hi, n >= 1");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  }
  out.back() = hi;
  return out;
}

}  // namespace lchi

#endif  // LCHI_FIT_HPP
