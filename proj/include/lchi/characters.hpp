// characters.hpp - Dirichlet characters modulo q with exact rational exponents.
//
// A character is stored as its table of exponents r_a in [0, 1) with
// chi(a) = e(r_a), or an empty entry when gcd(a, q) > 1. Complex values are
// produced on demand, so identities built from exponent arithmetic stay exact
// up to the final rounding of one root of unity.

#ifndef LCHI_CHARACTERS_HPP
#define LCHI_CHARACTERS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lchi/arithmetic.hpp"
#include "lchi/numeric.hpp"

namespace lchi {

using CharExponent = std::optional<Rational>;

class DirichletCharacter;
std::vector<DirichletCharacter> enumerate_characters(std::int64_t q);

namespace detail {

/// One cyclic factor of (Z/qZ)^*, with a discrete-log table over residues
/// modulo the prime power it lives on.
struct CyclicFactor {
  std::int64_t prime_power = 1;
  std::int64_t prime = 1;
  int exponent = 0;
  std::int64_t generator = 1;
  std::int64_t order = 1;
  bool is_sign = false;      // the <-1> factor of 2^k, k >= 3
  bool is_two_power = false;  // the <5> factor of 2^k, k >= 3
  std::vector<std::int64_t> dlog;  // -1 on non-units
};

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b = mod_floor(b, m);
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

inline std::int64_t least_primitive_root(std::int64_t p, int e) {
  const std::int64_t m = ipow(p, e);
  const std::int64_t phi = m / p * (p - 1);
  const auto primes = factorize(phi);
  for (std::int64_t g = 2; g < m; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (const auto& pp : primes) {
      if (powmod(g, phi / pp.prime, m) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // m == 2
}

inline std::vector<std::int64_t> cyclic_dlog(std::int64_t m, std::int64_t g, std::int64_t order) {
  std::vector<std::int64_t> table(static_cast<std::size_t>(m), -1);
  std::int64_t x = 1 % m;
  for (std::int64_t k = 0; k < order; ++k) {
    table[static_cast<std::size_t>(x)] = k;
    x = x * g % m;
  }
  return table;
}

/// Generators ordered by prime; for 2^k (k >= 3) the factor <-1> precedes <5>.
inline std::vector<CyclicFactor> unit_group_factors(std::int64_t q) {
  std::vector<CyclicFactor> out;
  for (const auto& pp : factorize(q)) {
    const std::int64_t m = ipow(pp.prime, pp.exponent);
    if (pp.prime == 2) {
      if (pp.exponent == 1) continue;
      if (pp.exponent == 2) {
        CyclicFactor f{m, 2, 2, 3, 2, true, false, cyclic_dlog(4, 3, 2)};
        out.push_back(std::move(f));
        continue;
      }
      CyclicFactor sign{m, 2, pp.exponent, m - 1, 2, true, false, {}};
      sign.dlog.assign(static_cast<std::size_t>(m), -1);
      for (std::int64_t a = 1; a < m; a += 2) sign.dlog[static_cast<std::size_t>(a)] = (a % 4 == 1) ? 0 : 1;
      const std::int64_t order5 = m / 4;
      CyclicFactor five{m, 2, pp.exponent, 5, order5, false, true, {}};
      const auto pos = cyclic_dlog(m, 5, order5);
      five.dlog.assign(static_cast<std::size_t>(m), -1);
      for (std::int64_t a = 1; a < m; a += 2) {
        const std::int64_t b = (a % 4 == 1) ? a : m - a;
        five.dlog[static_cast<std::size_t>(a)] = pos[static_cast<std::size_t>(b)];
      }
      out.push_back(std::move(sign));
      out.push_back(std::move(five));
      continue;
    }
    const std::int64_t g = least_primitive_root(pp.prime, pp.exponent);
    const std::int64_t order = m / pp.prime * (pp.prime - 1);
    out.push_back({m, pp.prime, pp.exponent, g, order, false, false, cyclic_dlog(m, g, order)});
  }
  return out;
}

/// Smallest f | q such that chi(a) = 1 whenever a = 1 mod f and gcd(a, q) = 1.
inline std::int64_t brute_force_conductor(std::int64_t q, const std::vector<CharExponent>& exps) {
  for (std::int64_t f = 1; f <= q; ++f) {
    if (q % f != 0) continue;
    bool induced = true;
    for (std::int64_t a = 1; a <= q; a += f) {
      const auto& e = exps[static_cast<std::size_t>(a % q)];
      if (e && e->num != 0) {
        induced = false;
        break;
      }
    }
    if (induced) return f;
  }
  return q;
}

}  // namespace detail

class DirichletCharacter {
 public:
  /// Builds a character from its exponent table; the table must describe a
  /// homomorphism (not checked here). Conductor is found by brute force.
  static DirichletCharacter from_exponents(std::int64_t q, std::vector<CharExponent> exps) {
    if (q < 1 || static_cast<std::int64_t>(exps.size()) != q) {
      throw std::invalid_argument("DirichletCharacter: exponent table must have length q >= 1");
    }
    DirichletCharacter chi;
    chi.modulus_ = q;
    chi.exps_ = std::move(exps);
    chi.conductor_ = detail::brute_force_conductor(q, chi.exps_);
    chi.finish();
    return chi;
  }

  std::int64_t modulus() const noexcept { return modulus_; }
  /// Position within enumerate_characters(modulus()), or -1 for derived characters.
  int label() const noexcept { return label_; }
  int kappa() const noexcept { return kappa_; }
  std::int64_t conductor() const noexcept { return conductor_; }
  bool primitive() const noexcept { return conductor_ == modulus_; }
  bool principal() const noexcept { return principal_; }
  bool real() const noexcept { return real_; }
  const std::vector<CharExponent>& exponents() const noexcept { return exps_; }
  const std::vector<std::int64_t>& generator_exponents() const noexcept { return tuple_; }

  CharExponent exponent(std::int64_t n) const { return exps_[static_cast<std::size_t>(mod_floor(n, modulus_))]; }

  cplx operator()(std::int64_t n) const {
    const auto& e = exps_[static_cast<std::size_t>(mod_floor(n, modulus_))];
    return e ? unit_root(*e) : cplx{0.0, 0.0};
  }

  DirichletCharacter conj() const {
    DirichletCharacter out = *this;
    for (auto& e : out.exps_) {
      if (e) *e = mod1(-*e);
    }
    if (!tuple_.empty()) {
      int label = 0;
      for (std::size_t i = 0; i < tuple_.size(); ++i) {
        out.tuple_[i] = tuple_[i] == 0 ? 0 : orders_[i] - tuple_[i];
        label = label * static_cast<int>(orders_[i]) + static_cast<int>(out.tuple_[i]);
      }
      out.label_ = label;
    }
    return out;
  }

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus_ == b.modulus_ && a.exps_ == b.exps_;
  }

 private:
  friend std::vector<DirichletCharacter> enumerate_characters(std::int64_t q);

  void finish() {
    const auto& minus_one = exps_[static_cast<std::size_t>(mod_floor(modulus_ - 1, modulus_))];
    kappa_ = (minus_one && minus_one->num != 0) ? 1 : 0;
    principal_ = std::all_of(exps_.begin(), exps_.end(), [](const CharExponent& e) { return !e || e->num == 0; });
    real_ = std::all_of(exps_.begin(), exps_.end(), [](const CharExponent& e) { return !e || e->den <= 2; });
  }

  std::int64_t modulus_ = 1;
  int label_ = -1;
  int kappa_ = 0;
  std::int64_t conductor_ = 1;
  bool principal_ = true;
  bool real_ = true;
  std::vector<CharExponent> exps_{Rational{0, 1}};
  std::vector<std::int64_t> tuple_;
  std::vector<std::int64_t> orders_;
};

/// All phi(q) characters modulo q, ordered lexicographically by their
/// exponent tuple on the generators of (Z/qZ)^*; label 0 is principal.
inline std::vector<DirichletCharacter> enumerate_characters(std::int64_t q) {
  if (q < 1) throw std::invalid_argument("enumerate_characters: q must be positive");
  const auto factors = detail::unit_group_factors(q);
  std::int64_t exponent = 1;
  std::int64_t count = 1;
  for (const auto& f : factors) {
    exponent = std::lcm(exponent, f.order);
    count *= f.order;
  }

  // logs[a][i] = discrete log of a in factor i
  std::vector<std::vector<std::int64_t>> logs(static_cast<std::size_t>(q));
  for (std::int64_t a = 0; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    auto& row = logs[static_cast<std::size_t>(a)];
    for (const auto& f : factors) row.push_back(f.dlog[static_cast<std::size_t>(a % f.prime_power)]);
  }

  std::vector<DirichletCharacter> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<std::int64_t> tuple(factors.size(), 0);
  for (std::int64_t idx = 0; idx < count; ++idx) {
    std::int64_t rest = idx;
    for (std::size_t i = factors.size(); i-- > 0;) {
      tuple[i] = rest % factors[i].order;
      rest /= factors[i].order;
    }
    DirichletCharacter chi;
    chi.modulus_ = q;
    chi.label_ = static_cast<int>(idx);
    chi.tuple_ = tuple;
    chi.exps_.assign(static_cast<std::size_t>(q), std::nullopt);
    for (const auto& f : factors) chi.orders_.push_back(f.order);
    for (std::int64_t a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      std::int64_t num = 0;
      const auto& row = logs[static_cast<std::size_t>(a)];
      for (std::size_t i = 0; i < factors.size(); ++i) {
        num = (num + tuple[i] * row[i] % factors[i].order * (exponent / factors[i].order)) % exponent;
      }
      chi.exps_[static_cast<std::size_t>(a)] = Rational(num, exponent);
    }

    // Conductor from the local components: a factor of order o on p^e has
    // conductor p^(1 + v_p(o)); on 2^k the <5> part of order 2^m needs 2^(m+2).
    std::int64_t cond = 1;
    std::int64_t two_part = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& f = factors[i];
      if (tuple[i] == 0) continue;
      const std::int64_t o = f.order / std::gcd(tuple[i], f.order);
      if (f.prime == 2) {
        if (f.is_sign) {
          two_part = std::max<std::int64_t>(two_part, 4);
        } else {
          two_part = std::max<std::int64_t>(two_part, 4 * o);
        }
        continue;
      }
      std::int64_t local = f.prime;
      for (std::int64_t r = o; r % f.prime == 0; r /= f.prime) local *= f.prime;
      cond *= local;
    }
    chi.conductor_ = cond * two_part;
    chi.finish();
    out.push_back(std::move(chi));
  }
  return out;
}

/// Character with the given label; throws std::out_of_range for unknown labels.
inline DirichletCharacter character(std::int64_t q, int label) {
  auto all = enumerate_characters(q);
  if (label < 0 || label >= static_cast<int>(all.size())) {
    throw std::out_of_range("unknown character label " + std::to_string(label) + " for modulus " +
                            std::to_string(q));
  }
  return std::move(all[static_cast<std::size_t>(label)]);
}

inline DirichletCharacter principal_character(std::int64_t q) { return character(q, 0); }

inline cplx char_value(const DirichletCharacter& chi, std::int64_t n) { return chi(n); }
inline std::int64_t conductor(const DirichletCharacter& chi) { return chi.conductor(); }
inline bool is_primitive(const DirichletCharacter& chi) { return chi.primitive(); }

/// All primitive characters modulo q, in label order.
inline std::vector<DirichletCharacter> primitive_characters(std::int64_t q) {
  auto all = enumerate_characters(q);
  std::erase_if(all, [](const DirichletCharacter& c) { return !c.primitive(); });
  return all;
}

/// Positive rational h/k stored reduced.
class RationalXi {
 public:
  RationalXi(std::int64_t h, std::int64_t k) {
    if (h <= 0 || k <= 0) throw std::invalid_argument("malformed xi: h and k must be positive");
    const std::int64_t g = std::gcd(h, k);
    h_ = h / g;
    k_ = k / g;
  }

  /// Parses "h/k" or a bare positive integer "h".
  static RationalXi parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        const long long h = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return {h, 1};
      }
      const std::string hs = text.substr(0, slash);
      const std::string ks = text.substr(slash + 1);
      const long long h = std::stoll(hs, &used);
      if (used != hs.size()) throw std::invalid_argument(text);
      const long long k = std::stoll(ks, &used);
      if (used != ks.size()) throw std::invalid_argument(text);
      return {h, k};
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed xi: '" + text + "'");
    }
  }

  std::int64_t h() const noexcept { return h_; }
  std::int64_t k() const noexcept { return k_; }
  double value() const noexcept { return static_cast<double>(h_) / static_cast<double>(k_); }
  std::string str() const { return std::to_string(h_) + "/" + std::to_string(k_); }

  friend bool operator==(const RationalXi&, const RationalXi&) = default;

 private:
  std::int64_t h_ = 1;
  std::int64_t k_ = 1;
};

}  // namespace lchi

#endif  // LCHI_CHARACTERS_HPP
