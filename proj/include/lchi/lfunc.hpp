// lfunc.hpp - L(s, chi), L'/L and the functional-equation factor X_chi(s).

#ifndef LCHI_LFUNC_HPP
#define LCHI_LFUNC_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "lchi/arithmetic.hpp"
#include "lchi/characters.hpp"
#include "lchi/errors.hpp"
#include "lchi/gauss.hpp"
#include "lchi/numeric.hpp"
#include "lchi/special.hpp"

namespace lchi {

/// Largest |t| accepted by the evaluators. Phases grow like t log t, so at
/// |t| = 1500 binary64 still leaves ~1e-12 relative accuracy.
inline constexpr double kMaxOrdinate = 1500.0;

struct ComplexPoint {
  double sigma = 0.0;
  double t = 0.0;

  cplx s() const { return {sigma, t}; }
};

inline void check_ordinate(double t, const char* who) {
  if (!std::isfinite(t) || std::abs(t) > kMaxOrdinate) {
    throw std::domain_error(std::string(who) + ": |t| exceeds the supported range");
  }
}

/// L(s, chi) and dL/ds through Hurwitz zeta over residue classes.
inline ValueAndDerivative l_value_and_derivative(ComplexPoint p, const DirichletCharacter& chi,
                                                  const EulerMaclaurinConfig& cfg = {}) {
  check_ordinate(p.t, "l_value");
  const cplx s = p.s();
  const std::int64_t q = chi.modulus();
  const bool principal = chi.principal();
  if (principal && s == cplx{1.0, 0.0}) throw PoleError("L(s, chi): pole at s = 1 for principal chi");

  CompensatedSum<cplx> value;
  CompensatedSum<cplx> deriv;
  for (std::int64_t a = 1; a <= q; ++a) {
    const auto e = chi.exponent(a);
    if (!e) continue;
    const cplx c = unit_root(*e);
    const double alpha = static_cast<double>(a) / static_cast<double>(q);
    const auto z = detail::hurwitz_core<true>(s, alpha, !principal, cfg);
    value += c * z.value;
    deriv += c * z.derivative;
  }
  const double lq = std::log(static_cast<double>(q));
  const cplx scale = std::exp(-s * lq);
  const cplx v = scale * value.value();
  return {v, scale * deriv.value() - lq * v};
}

inline cplx l_value(ComplexPoint p, const DirichletCharacter& chi, const EulerMaclaurinConfig& cfg = {}) {
  check_ordinate(p.t, "l_value");
  const cplx s = p.s();
  const std::int64_t q = chi.modulus();
  const bool principal = chi.principal();
  if (principal && s == cplx{1.0, 0.0}) throw PoleError("L(s, chi): pole at s = 1 for principal chi");
  CompensatedSum<cplx> value;
  for (std::int64_t a = 1; a <= q; ++a) {
    const auto e = chi.exponent(a);
    if (!e) continue;
    const double alpha = static_cast<double>(a) / static_cast<double>(q);
    value += unit_root(*e) * detail::hurwitz_core<false>(s, alpha, !principal, cfg).value;
  }
  return std::exp(-s * std::log(static_cast<double>(q))) * value.value();
}

/// Abscissa from which L'/L is summed as a Dirichlet series; below it the
/// Euler-Maclaurin derivative is used.
inline constexpr double kSeriesAbscissa = 4.0;

/// L'/L(s, chi). Throws NearZeroError when |L(s, chi)| < 1e-10.
inline cplx log_derivative(ComplexPoint p, const DirichletCharacter& chi, const EulerMaclaurinConfig& cfg = {}) {
  check_ordinate(p.t, "log_derivative");
  if (p.sigma >= kSeriesAbscissa) {
    // tail sum_{n>N} log(n) n^{-sigma} <= N^{1-sigma} (log N/(sigma-1) + 1/(sigma-1)^2)
    const double d = p.sigma - 1.0;
    std::int64_t n_max = 64;
    while (std::pow(static_cast<double>(n_max), -d) * static_cast<double>(n_max) *
               (std::log(static_cast<double>(n_max)) / d + 1.0 / (d * d)) >
           1e-12) {
      n_max *= 2;
    }
    const MangoldtTable lambda(n_max);
    const cplx s = p.s();
    CompensatedSum<cplx> acc;
    for (std::int64_t n = 2; n <= n_max; ++n) {
      if (lambda[n] == 0.0) continue;
      const auto e = chi.exponent(n);
      if (!e) continue;
      acc -= lambda[n] * unit_root(*e) * std::exp(-s * std::log(static_cast<double>(n)));
    }
    return acc.value();
  }
  const auto ld = l_value_and_derivative(p, chi, cfg);
  if (std::abs(ld.value) < 1e-10) throw NearZeroError("log_derivative: too close to a zero of L(s, chi)");
  return ld.derivative / ld.value;
}

enum class XFactorMethod { exact, asymptotic };

struct XFactorResult {
  cplx value;
  XFactorMethod method = XFactorMethod::exact;
  std::optional<double> relative_error_estimate;  // asymptotic only
};

namespace detail {

/// log sin(z) without overflow for large |Im z| (any branch).
template <class Real>
std::complex<Real> log_sin(std::complex<Real> z) {
  using C = std::complex<Real>;
  const C i{0, 1};
  if (z.imag() >= Real(0)) return -i * z + std::log((std::exp(Real(2) * i * z) - Real(1)) / (Real(2) * i));
  return i * z + std::log((Real(1) - std::exp(Real(-2) * i * z)) / (Real(2) * i));
}

inline double sin_half_pi_int(std::int64_t m) {
  switch (mod_floor(m, 4)) {
    case 0: return 0.0;
    case 1: return 1.0;
    case 2: return 0.0;
    default: return -1.0;
  }
}

}  // namespace detail

/// X_chi(s) = eps 2^s pi^{s-1} q^{1/2-s} Gamma(1-s) sin(pi (s+kappa)/2),
/// evaluated in log space. `epsilon` is the root number of chi.
template <class Real>
std::complex<Real> x_factor_value(std::complex<Real> s, cplx epsilon, std::int64_t q, int kappa) {
  using C = std::complex<Real>;
  const Real pi = std::numbers::pi_v<Real>;
  const Real lq = std::log(static_cast<Real>(q));
  const C eps{static_cast<Real>(epsilon.real()), static_cast<Real>(epsilon.imag())};

  if (s.imag() == Real(0) && std::floor(s.real()) == s.real()) {
    const auto n = static_cast<std::int64_t>(s.real());
    const Real nr = s.real();
    if (n <= 0) {
      // Gamma(1 - n) is finite here
      const Real g = std::tgamma(Real(1) - nr);
      const Real sn = static_cast<Real>(detail::sin_half_pi_int(n + kappa));
      return eps * std::pow(Real(2), nr) * std::pow(pi, nr - Real(1)) * std::exp((Real(0.5) - nr) * lq) * g * sn;
    }
    // reflected form eps 2^s pi^s q^{1/2-s} / (2 Gamma(s) trig(pi s / 2))
    const Real trig = static_cast<Real>(kappa == 0 ? detail::sin_half_pi_int(n + 1) : detail::sin_half_pi_int(n));
    if (trig == Real(0)) throw PoleError("x_factor: pole of X_chi at s = " + std::to_string(n));
    const Real g = std::tgamma(nr);
    return eps * std::pow(Real(2) * pi, nr) * std::exp((Real(0.5) - nr) * lq) / (Real(2) * g * trig);
  }

  const C log_x = s * std::log(Real(2)) + (s - Real(1)) * std::log(pi) + (Real(0.5) - s) * lq +
                  log_gamma(C(Real(1), Real(0)) - s) + detail::log_sin(pi * (s + static_cast<Real>(kappa)) / Real(2));
  return eps * std::exp(log_x);
}

inline XFactorResult x_factor_exact(ComplexPoint p, const DirichletCharacter& chi) {
  check_ordinate(p.t, "x_factor_exact");
  return {x_factor_value<double>(p.s(), root_number(chi), chi.modulus(), chi.kappa()), XFactorMethod::exact,
          std::nullopt};
}

/// Stirling main term of X_chi(1 - c - it), valid for t >= 1:
/// tau(chi) q^{c-1} e^{-pi i/4} exp(i t log(q t / 2 pi e)) (t / 2 pi)^{c - 1/2}.
/// The error estimate is the size of the leading 1/t correction,
/// |c(1-c)/2 - 1/12| / t.
inline XFactorResult x_factor_asymptotic(double c, double t, const DirichletCharacter& chi) {
  if (!(t >= 1.0)) throw std::domain_error("x_factor_asymptotic: requires t >= 1");
  check_ordinate(t, "x_factor_asymptotic");
  const double q = static_cast<double>(chi.modulus());
  const cplx tau = gauss_sum(chi);
  const double phase = t * std::log(q * t / (kTwoPi * std::numbers::e)) - kPi / 4.0;
  const double modulus = std::pow(q, c - 1.0) * std::pow(t / kTwoPi, c - 0.5);
  return {tau * std::polar(modulus, phase), XFactorMethod::asymptotic,
          std::abs(c * (1.0 - c) / 2.0 - 1.0 / 12.0) / t};
}

/// Phase theta(t) making exp(i theta) L(1/2 + it, chi) real for primitive chi:
/// -arg(eps)/2 + (t/2) log(q/pi) + Im log Gamma((1/2 + kappa + it)/2).
inline double z_rotation_phase(double t, const DirichletCharacter& chi, cplx epsilon) {
  const double q = static_cast<double>(chi.modulus());
  const cplx lg = log_gamma(cplx{(0.5 + chi.kappa()) / 2.0, t / 2.0});
  return -std::arg(epsilon) / 2.0 + 0.5 * t * std::log(q / kPi) + lg.imag();
}

struct QuietOrdinate {
  double t_star = 0.0;
  double max_abs_log_derivative = 0.0;
  int skipped_candidates = 0;
};

inline constexpr std::array<double, 9> kQuietSigmas = {-1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0};

/// max over kQuietSigmas of |L'/L(sigma + it, chi)|.
inline double max_log_derivative(double t, const DirichletCharacter& chi, const EulerMaclaurinConfig& cfg = {}) {
  double worst = 0.0;
  for (double sigma : kQuietSigmas) worst = std::max(worst, std::abs(log_derivative({sigma, t}, chi, cfg)));
  return worst;
}

/// Scans `candidates` equally spaced ordinates of [t, t+1] and returns the
/// one minimising max_log_derivative. Grid neighbours of a sign change of
/// the rotated Z-function, and points where L is too small, are skipped.
inline QuietOrdinate find_quiet_ordinate(const DirichletCharacter& chi, double t, int candidates = 200,
                                         const EulerMaclaurinConfig& cfg = {}) {
  if (!(t >= 2.0)) throw std::domain_error("find_quiet_ordinate: requires t >= 2");
  if (!chi.primitive()) throw std::invalid_argument("find_quiet_ordinate: character must be primitive");
  if (candidates < 2) throw std::invalid_argument("find_quiet_ordinate: need at least two candidates");
  const cplx eps = root_number(chi);
  const auto n = static_cast<std::size_t>(candidates);
  std::vector<double> ts(n);
  std::vector<double> z(n);
  for (std::size_t j = 0; j < n; ++j) {
    ts[j] = t + static_cast<double>(j) / static_cast<double>(n - 1);
    const cplx l = l_value({0.5, ts[j]}, chi, cfg);
    z[j] = (std::polar(1.0, z_rotation_phase(ts[j], chi, eps)) * l).real();
  }
  std::vector<bool> skip(n, false);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if ((z[j] < 0.0) != (z[j + 1] < 0.0) || z[j] == 0.0) {
      skip[j] = true;
      skip[j + 1] = true;
    }
  }
  QuietOrdinate best{t, std::numeric_limits<double>::infinity(), 0};
  for (std::size_t j = 0; j < n; ++j) {
    if (skip[j]) {
      ++best.skipped_candidates;
      continue;
    }
    double value = 0.0;
    try {
      value = max_log_derivative(ts[j], chi, cfg);
    } catch (const NearZeroError&) {
      ++best.skipped_candidates;
      continue;
    }
    if (value < best.max_abs_log_derivative) {
      best.t_star = ts[j];
      best.max_abs_log_derivative = value;
    }
  }
  return best;
}

}  // namespace lchi

#endif  // LCHI_LFUNC_HPP
