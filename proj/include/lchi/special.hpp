// special.hpp - complex log-Gamma and the Hurwitz zeta function.

#ifndef LCHI_SPECIAL_HPP
#define LCHI_SPECIAL_HPP

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "lchi/errors.hpp"
#include "lchi/numeric.hpp"

namespace lchi {

/// log Gamma(z) on the principal branch (cut along the negative real axis),
/// continuous in z off the cut. Shifts z right until Re z >= 10 and applies
/// the Stirling series there; the shift logs are taken one factor at a time,
/// which keeps the imaginary part continuous instead of reducing it mod 2 pi.
template <class Real>
std::complex<Real> log_gamma(std::complex<Real> z) {
  using C = std::complex<Real>;
  static constexpr std::array<double, 10> kStirling = {
      1.0 / 12.0,        -1.0 / 360.0,           1.0 / 1260.0,         -1.0 / 1680.0,
      1.0 / 1188.0,      -691.0 / 360360.0,      1.0 / 156.0,          -3617.0 / 122400.0,
      43867.0 / 244188.0, -174611.0 / 125400.0,
  };
  if (z.imag() == Real(0) && z.real() <= Real(0) && std::floor(z.real()) == z.real()) {
    throw PoleError("log_gamma: pole at nonpositive integer");
  }
  C shift{0, 0};
  while (z.real() < Real(10)) {
    shift += std::log(z);
    z += Real(1);
  }
  const C inv = Real(1) / z;
  const C inv2 = inv * inv;
  C series{0, 0};
  C power = inv;
  for (double c : kStirling) {
    series += static_cast<Real>(c) * power;
    power *= inv2;
  }
  const Real half_log_two_pi = std::log(Real(2) * std::numbers::pi_v<Real>) / Real(2);
  return (z - Real(0.5)) * std::log(z) - z + half_log_two_pi + series - shift;
}

/// Euler-Maclaurin truncation: N = max(min_terms, terms_per_t * |t|)
/// leading terms and `bernoulli_pairs` correction terms.
struct EulerMaclaurinConfig {
  int min_terms = 20;
  double terms_per_t = 2.0;
  int bernoulli_pairs = 8;

  int terms_for(double t) const {
    return std::max(min_terms, static_cast<int>(std::ceil(terms_per_t * std::abs(t))));
  }
};

struct ValueAndDerivative {
  cplx value;
  cplx derivative;  // d/ds
};

namespace detail {

inline constexpr std::array<double, 10> kBernoulliEven = {
    1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,        -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0,
};

/// (w^{-d} - 1) / d and its d-derivative, stable as d -> 0.
inline ValueAndDerivative pow_minus_one_ratio(double log_w, cplx d) {
  const cplx x = d * log_w;
  if (std::abs(x) > 0.1) {
    const cplx p = std::exp(-x);
    const cplx v = (p - 1.0) / d;
    const cplx dv = (-log_w * p * d - (p - 1.0)) / (d * d);
    return {v, dv};
  }
  // (e^{-x} - 1)/d = -L * sum_{k>=0} (-x)^k / (k+1)!
  cplx v{0.0, 0.0};
  cplx dv{0.0, 0.0};
  cplx xk{1.0, 0.0};
  double fact = 1.0;
  for (int k = 0; k < 16; ++k) {
    fact *= static_cast<double>(k + 1);
    v += xk / fact;
    if (k + 2 <= 16) {
      // derivative of x^{k+1}/(k+2)! with respect to d
      dv += static_cast<double>(k + 1) * xk / (fact * static_cast<double>(k + 2));
    }
    xk *= -x;
  }
  // v currently holds sum (-x)^k/(k+1)!; dv holds sum (k+1) (-x)^k/(k+2)!
  return {-log_w * v, log_w * log_w * dv};
}

/// Euler-Maclaurin evaluation of zeta(s, alpha). With `regularized` the
/// (N+alpha)^{1-s}/(s-1) term is replaced by ((N+alpha)^{1-s} - 1)/(s-1),
/// which differs by 1/(s-1) and is finite at s = 1; callers combining
/// residue classes with weights summing to zero use it to cancel the pole.
template <bool WithDerivative>
ValueAndDerivative hurwitz_core(cplx s, double alpha, bool regularized, const EulerMaclaurinConfig& cfg) {
  const int n_terms = cfg.terms_for(s.imag()) + static_cast<int>(std::ceil(std::max(0.0, -s.real())));
  CompensatedSum<cplx> sum;
  CompensatedSum<cplx> dsum;
  for (int n = 0; n < n_terms; ++n) {
    const double lw = std::log(n + alpha);
    const cplx term = std::exp(-s * lw);
    sum += term;
    if constexpr (WithDerivative) dsum -= lw * term;
  }

  const double w = n_terms + alpha;
  const double lw = std::log(w);
  const cplx w_minus_s = std::exp(-s * lw);
  const cplx sm1 = s - 1.0;

  if (regularized) {
    const auto r = pow_minus_one_ratio(lw, sm1);
    sum += r.value;
    if constexpr (WithDerivative) dsum += r.derivative;
  } else {
    const cplx w1 = w_minus_s * w;
    sum += w1 / sm1;
    if constexpr (WithDerivative) dsum += -lw * w1 / sm1 - w1 / (sm1 * sm1);
  }
  sum += 0.5 * w_minus_s;
  if constexpr (WithDerivative) dsum -= 0.5 * lw * w_minus_s;

  // sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * w^{-s-2j+1}
  cplx poch = s;
  cplx dpoch{1.0, 0.0};
  cplx wpow = w_minus_s / w;
  const double inv_w2 = 1.0 / (w * w);
  double fact = 2.0;
  for (int j = 1; j <= cfg.bernoulli_pairs; ++j) {
    const double coef = kBernoulliEven[static_cast<std::size_t>(j - 1)] / fact;
    sum += coef * poch * wpow;
    if constexpr (WithDerivative) dsum += coef * (dpoch - lw * poch) * wpow;
    const cplx f1 = s + static_cast<double>(2 * j - 1);
    const cplx f2 = s + static_cast<double>(2 * j);
    if constexpr (WithDerivative) dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
    poch *= f1 * f2;
    wpow *= inv_w2;
    fact *= static_cast<double>((2 * j + 1) * (2 * j + 2));
  }
  return {sum.value(), WithDerivative ? dsum.value() : cplx{}};
}

}  // namespace detail

/// zeta(s, alpha) = sum_{n >= 0} (n + alpha)^{-s}, alpha in (0, 1].
inline cplx hurwitz_zeta(cplx s, double alpha, const EulerMaclaurinConfig& cfg = {}) {
  if (s == cplx{1.0, 0.0}) throw PoleError("hurwitz_zeta: pole at s = 1");
  return detail::hurwitz_core<false>(s, alpha, false, cfg).value;
}

inline ValueAndDerivative hurwitz_zeta_with_derivative(cplx s, double alpha, const EulerMaclaurinConfig& cfg = {}) {
  if (s == cplx{1.0, 0.0}) throw PoleError("hurwitz_zeta: pole at s = 1");
  return detail::hurwitz_core<true>(s, alpha, false, cfg);
}

}  // namespace lchi

#endif  // LCHI_SPECIAL_HPP
