// gauss.hpp - Gauss sums, root numbers and the closed-form character sums
// built from them. Each closed form comes with the brute-force sum it
// replaces so callers can compare the two.

#ifndef LCHI_GAUSS_HPP
#define LCHI_GAUSS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "lchi/arithmetic.hpp"
#include "lchi/characters.hpp"
#include "lchi/numeric.hpp"

namespace lchi {

/// tau(chi) = sum_{a mod q} chi(a) e(a/q), summed on exact exponents.
inline cplx gauss_sum(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  CompensatedSum<cplx> acc;
  for (std::int64_t a = 0; a < q; ++a) {
    const auto e = chi.exponent(a);
    if (!e) continue;
    acc += unit_root(*e + Rational(a, q));
  }
  return acc.value();
}

struct GaussData {
  cplx tau;
  cplx epsilon;
  std::int64_t modulus = 1;
  int kappa = 0;
};

inline cplx i_pow(int k) {
  switch (mod_floor(k, 4)) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline GaussData gauss_data(const DirichletCharacter& chi) {
  GaussData g;
  g.tau = gauss_sum(chi);
  g.modulus = chi.modulus();
  g.kappa = chi.kappa();
  g.epsilon = g.tau / (i_pow(g.kappa) * std::sqrt(static_cast<double>(g.modulus)));
  return g;
}

/// epsilon_chi = tau(chi) / (i^kappa sqrt(q)); defined for primitive chi only.
inline cplx root_number(const DirichletCharacter& chi) {
  if (!chi.primitive()) throw std::domain_error("root_number: character is not primitive");
  return gauss_data(chi).epsilon;
}

struct TwistedRamanujan {
  cplx brute_force;
  cplx closed_form;
  bool closed_form_nonzero = false;  // false when gcd(h, q) > 1 or the mu/chi factors vanish
};

/// C = sum_{a mod qk, (a,qk)=1} e(-ah/qk) chi(a) directly and through
/// conj(chi)(-h) chi(k) mu(k) tau(chi) (zero when gcd(h, q) > 1).
inline TwistedRamanujan twisted_ramanujan_sum(const DirichletCharacter& chi, std::int64_t h, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("twisted_ramanujan_sum: k must be positive");
  if (std::gcd(h < 0 ? -h : h, k) != 1) throw std::invalid_argument("twisted_ramanujan_sum: gcd(h, k) must be 1");
  const std::int64_t q = chi.modulus();
  const std::int64_t m = q * k;

  CompensatedSum<cplx> acc;
  for (std::int64_t a = 1; a <= m; ++a) {
    if (std::gcd(a, m) != 1) continue;
    const auto e = chi.exponent(a);
    acc += unit_root(*e - Rational(mod_floor(a * h, m), m));
  }

  TwistedRamanujan out;
  out.brute_force = acc.value();
  const auto e_minus_h = chi.exponent(-h);
  const auto e_k = chi.exponent(k);
  const int mu = moebius(k);
  if (e_minus_h && e_k && mu != 0) {
    out.closed_form = static_cast<double>(mu) * unit_root(*e_k - *e_minus_h) * gauss_sum(chi);
    out.closed_form_nonzero = true;
  }
  return out;
}

/// conj(chi)(h) chi(k) mu(k) q / phi(qk) when gcd(h, q) = 1, else 0.
inline cplx c_tilde(const DirichletCharacter& chi, const RationalXi& xi) {
  const std::int64_t q = chi.modulus();
  if (std::gcd(xi.h(), q) != 1) return {0.0, 0.0};
  const auto e_h = chi.exponent(xi.h());
  const auto e_k = chi.exponent(xi.k());
  const int mu = moebius(xi.k());
  if (!e_k || mu == 0) return {0.0, 0.0};
  const double scale = static_cast<double>(mu) * static_cast<double>(q) / static_cast<double>(euler_phi(q * xi.k()));
  return scale * unit_root(*e_k - *e_h);
}

/// theta(n) = psi(n) conj(chi)(n) as a character modulo q * q~.
inline DirichletCharacter product_character(const DirichletCharacter& chi, const DirichletCharacter& psi) {
  const std::int64_t m = chi.modulus() * psi.modulus();
  std::vector<CharExponent> exps(static_cast<std::size_t>(m));
  for (std::int64_t n = 0; n < m; ++n) {
    const auto a = psi.exponent(n);
    const auto b = chi.exponent(n);
    if (a && b) exps[static_cast<std::size_t>(n)] = mod1(*a - *b);
  }
  return DirichletCharacter::from_exponents(m, std::move(exps));
}

struct ProductTau {
  cplx brute_force;  // tau(conj theta), summed directly
  cplx closed_form;  // chi(q~) mu(q~) tau(chi)
};

/// Both sides of tau(conj theta) = chi(q~) mu(q~) tau(chi). The identity is
/// only claimed in a restricted regime, so nothing is asserted here.
inline ProductTau product_character_tau(const DirichletCharacter& chi, const DirichletCharacter& psi) {
  if (!psi.primitive()) throw std::invalid_argument("product_character_tau: psi must be primitive");
  const auto theta = product_character(chi, psi);
  ProductTau out;
  out.brute_force = gauss_sum(theta.conj());
  out.closed_form = static_cast<double>(moebius(psi.modulus())) * chi(psi.modulus()) * gauss_sum(chi);
  return out;
}

}  // namespace lchi

#endif  // LCHI_GAUSS_HPP
