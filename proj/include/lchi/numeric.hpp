// numeric.hpp - exact rationals, roots of unity, compensated sums.

#ifndef LCHI_NUMERIC_HPP
#define LCHI_NUMERIC_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lchi {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduced fraction num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;

  friend constexpr Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t g = std::gcd(a.den, b.den);
    return {a.num * (b.den / g) + b.num * (a.den / g), a.den / g * b.den};
  }
  friend constexpr Rational operator-(const Rational& a) { return {-a.num, a.den}; }
  friend constexpr Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend constexpr Rational operator*(const Rational& a, std::int64_t k) {
    const std::int64_t g = std::gcd(k < 0 ? -k : k, a.den);
    return {a.num * (k / g), a.den / g};
  }
};

/// Representative of r modulo 1 in [0, 1).
constexpr Rational mod1(const Rational& r) {
  std::int64_t n = r.num % r.den;
  if (n < 0) n += r.den;
  return {n, r.den};
}

constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

namespace detail {

// e(f) for f in [-1/8, 1/8] then rotated by i^quadrant.
inline cplx rotate_quadrant(double reduced, std::int64_t quadrant) {
  const double angle = kTwoPi * reduced;
  const cplx base{std::cos(angle), std::sin(angle)};
  switch (mod_floor(quadrant, 4)) {
    case 0: return base;
    case 1: return {-base.imag(), base.real()};
    case 2: return -base;
    default: return {base.imag(), -base.real()};
  }
}

}  // namespace detail

/// e(r) = exp(2 pi i r), exact at multiples of 1/4.
inline cplx unit_root(const Rational& r) {
  const Rational f = mod1(r);
  // quadrant k = round(4f); remainder f - k/4 lies in [-1/8, 1/8].
  const std::int64_t k = (8 * f.num + f.den) / (2 * f.den);
  const Rational rem = f - Rational(k, 4);
  if (rem.num == 0) return detail::rotate_quadrant(0.0, k);
  return detail::rotate_quadrant(rem.value(), k);
}

/// e(x) for real x with the same quadrant reduction.
inline cplx unit_root(double x) {
  double f = x - std::floor(x);
  const double k = std::nearbyint(4.0 * f);
  return detail::rotate_quadrant(f - 0.25 * k, static_cast<std::int64_t>(k));
}

/// Neumaier-compensated accumulator. The rounding error of the running sum
/// is carried separately so each added term costs O(1) ulp overall.
template <class T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(T init) : sum_(init) {}

  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  CompensatedSum& operator-=(T x) {
    add(-x);
    return *this;
  }
  T value() const { return sum_ + carry_; }

 private:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  T sum_{};
  T carry_{};
};

template <>
class CompensatedSum<cplx> {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(cplx init) : re_(init.real()), im_(init.imag()) {}

  CompensatedSum& operator+=(cplx x) {
    re_ += x.real();
    im_ += x.imag();
    return *this;
  }
  CompensatedSum& operator-=(cplx x) { return *this += -x; }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

/// log_+ u = max(log u, 1).
inline double log_plus(double u) { return std::max(std::log(u), 1.0); }

}  // namespace lchi

#endif  // LCHI_NUMERIC_HPP
