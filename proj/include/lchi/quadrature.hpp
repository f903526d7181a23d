// quadrature.hpp - adaptive Gauss-Kronrod (7, 15) and a frequency-adaptive
// panel rule for oscillatory integrands.

#ifndef LCHI_QUADRATURE_HPP
#define LCHI_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <string>
#include <vector>

#include "lchi/errors.hpp"
#include "lchi/numeric.hpp"

namespace lchi {

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_intervals = 2000;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
};

template <class T, class F>
Panel<T> gauss_kronrod_15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = kKronrodWeights[7] * fc;
  T gauss = kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  return {a, b, half * kronrod, std::abs(half * (kronrod - gauss))};
}

}  // namespace detail

/// Globally adaptive G7-K15 on [a, b]. Splits the panel with the largest
/// error estimate until the total estimate meets the tolerance; throws
/// QuadratureError when max_intervals is exceeded. Panels are summed in
/// order of their left endpoint, so results are reproducible.
template <class T, class F>
QuadratureResult<T> integrate(const F& f, double a, double b, const QuadratureOptions& opt = {}) {
  QuadratureResult<T> out;
  if (a == b) return out;
  auto cmp = [](const detail::Panel<T>& x, const detail::Panel<T>& y) { return x.error < y.error; };
  std::priority_queue<detail::Panel<T>, std::vector<detail::Panel<T>>, decltype(cmp)> heap(cmp);
  heap.push(detail::gauss_kronrod_15<T>(f, a, b));
  out.evaluations = 15;
  T total = heap.top().value;
  double err = heap.top().error;
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= opt.max_intervals) {
      throw QuadratureError("integrate: subdivision budget exhausted on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_15<T>(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15<T>(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  std::vector<detail::Panel<T>> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  CompensatedSum<T> acc;
  double e = 0.0;
  for (const auto& p : panels) {
    acc += p.value;
    e += p.error;
  }
  out.value = acc.value();
  out.error = e;
  out.intervals = static_cast<int>(panels.size());
  return out;
}

struct OscillatoryOptions {
  /// Kronrod nodes per local oscillation period; each 15-node panel spans
  /// 15 / nodes_per_oscillation periods of the local phase.
  double nodes_per_oscillation = 20.0;
  double max_panel = 1.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_panels = 400000;
  int max_intervals_per_panel = 200;
};

/// Integrates f over [a, b] on panels sized from |phase_derivative|, the
/// local angular frequency of f, then refines each panel adaptively.
template <class F, class Omega>
QuadratureResult<cplx> integrate_oscillatory(const F& f, const Omega& phase_derivative, double a, double b,
                                             const OscillatoryOptions& opt = {}) {
  QuadratureResult<cplx> out;
  const double periods_per_panel = 15.0 / opt.nodes_per_oscillation;
  auto width_at = [&](double x) {
    const double omega = std::max(std::abs(phase_derivative(x)), 1e-3);
    return std::min(opt.max_panel, periods_per_panel * kTwoPi / omega);
  };
  std::vector<std::pair<double, double>> panels;
  double x = a;
  while (x < b) {
    double w = width_at(x);
    w = std::min(w, width_at(std::min(b, x + w)));
    const double next = (b - x <= w) ? b : x + w;
    panels.emplace_back(x, next);
    x = next;
    if (static_cast<int>(panels.size()) > opt.max_panels) {
      throw QuadratureError("integrate_oscillatory: panel budget exhausted");
    }
  }
  CompensatedSum<cplx> acc;
  QuadratureOptions inner{opt.abs_tol / static_cast<double>(panels.size()), opt.rel_tol, opt.max_intervals_per_panel};
  for (const auto& [lo, hi] : panels) {
    const auto r = integrate<cplx>(f, lo, hi, inner);
    acc += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.intervals += r.intervals;
  }
  out.value = acc.value();
  return out;
}

}  // namespace lchi

#endif  // LCHI_QUADRATURE_HPP
