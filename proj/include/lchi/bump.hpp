// bump.hpp - smooth compactly supported weights on the positive reals.

#ifndef LCHI_BUMP_HPP
#define LCHI_BUMP_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "lchi/quadrature.hpp"

namespace lchi {

/// A weight B in C_c^infty(R^+) supported in [a, b], with its derivative and
/// the cached total integral C_B = int_0^infty B(u) du.
class BumpWeight {
 public:
  using Fn = std::function<double(double)>;

  BumpWeight(double a, double b, Fn value, Fn derivative, std::string description)
      : a_(a), b_(b), value_(std::move(value)), derivative_(std::move(derivative)), description_(std::move(description)) {
    if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("bump support must satisfy 0 < a < b");
    const auto r = integrate<double>([this](double u) { return value_(u); }, a_, b_, {1e-15, 1e-13, 4000});
    integral_ = r.value;
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double integral() const noexcept { return integral_; }
  const std::string& description() const noexcept { return description_; }

  double operator()(double u) const { return (u <= a_ || u >= b_) ? 0.0 : value_(u); }
  double derivative(double u) const { return (u <= a_ || u >= b_) ? 0.0 : derivative_(u); }

 private:
  double a_;
  double b_;
  Fn value_;
  Fn derivative_;
  std::string description_;
  double integral_ = 0.0;
};

/// B(u) = exp(-1 / ((u - a)(b - u))) on (a, b), zero elsewhere.
inline BumpWeight default_bump(double a, double b) {
  if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("default_bump: need 0 < a < b");
  auto value = [a, b](double u) { return std::exp(-1.0 / ((u - a) * (b - u))); };
  auto derivative = [a, b](double u) {
    const double g = (u - a) * (b - u);
    return std::exp(-1.0 / g) * (a + b - 2.0 * u) / (g * g);
  };
  return {a, b, value, derivative,
          "exp(-1/((u-a)(b-u))) on [" + std::to_string(a) + "," + std::to_string(b) + "]"};
}

namespace detail {

inline double transition_base(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// S(x) = f(x) / (f(x) + f(1 - x)): 0 for x <= 0, 1 for x >= 1, smooth between.
inline double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double f0 = transition_base(x);
  const double f1 = transition_base(1.0 - x);
  return f0 / (f0 + f1);
}

inline double smooth_step_derivative(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double f0 = transition_base(x);
  const double f1 = transition_base(1.0 - x);
  const double d0 = f0 / (x * x);
  const double d1 = -f1 / ((1.0 - x) * (1.0 - x));
  const double den = f0 + f1;
  return (d0 * den - f0 * (d0 + d1)) / (den * den);
}

}  // namespace detail

/// Plateau weight equal to 1 on [a + ramp, b - ramp] with smooth ramps; as
/// ramp -> 0 it approaches the indicator of [a, b].
inline BumpWeight plateau_bump(double a, double b, double ramp) {
  if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("plateau_bump: need 0 < a < b");
  if (!(ramp > 0.0) || 2.0 * ramp > b - a) throw std::invalid_argument("plateau_bump: need 0 < 2 ramp <= b - a");
  auto value = [a, b, ramp](double u) {
    return detail::smooth_step((u - a) / ramp) * detail::smooth_step((b - u) / ramp);
  };
  auto derivative = [a, b, ramp](double u) {
    const double x = (u - a) / ramp;
    const double y = (b - u) / ramp;
    return (detail::smooth_step_derivative(x) * detail::smooth_step(y) -
            detail::smooth_step(x) * detail::smooth_step_derivative(y)) /
           ramp;
  };
  return {a, b, value, derivative,
          "plateau on [" + std::to_string(a) + "," + std::to_string(b) + "] ramp " + std::to_string(ramp)};
}

}  // namespace lchi

#endif  // LCHI_BUMP_HPP
