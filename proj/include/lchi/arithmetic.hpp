// arithmetic.hpp - von Mangoldt, Moebius and Euler phi by trial division.

#ifndef LCHI_ARITHMETIC_HPP
#define LCHI_ARITHMETIC_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lchi {

struct PrimePower {
  std::int64_t prime;
  int exponent;
};

inline std::vector<PrimePower> factorize(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

/// Lambda(n) = log p when n = p^m, else 0.
inline double von_mangoldt(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("von_mangoldt: n must be positive");
  if (n == 1) return 0.0;
  const auto f = factorize(n);
  return f.size() == 1 ? std::log(static_cast<double>(f.front().prime)) : 0.0;
}

inline int moebius(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("moebius: n must be positive");
  int mu = 1;
  for (const auto& pp : factorize(n)) {
    if (pp.exponent > 1) return 0;
    mu = -mu;
  }
  return mu;
}

inline std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  std::int64_t phi = n;
  for (const auto& pp : factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

inline bool coprime(std::int64_t a, std::int64_t b) { return std::gcd(a, b) == 1; }

/// Lambda(n) for 0 <= n <= limit from a smallest-prime-factor sieve.
/// Entry 0 is unused and holds 0.
class MangoldtTable {
 public:
  MangoldtTable() = default;
  explicit MangoldtTable(std::int64_t limit) { extend(limit); }

  std::int64_t limit() const { return static_cast<std::int64_t>(values_.size()) - 1; }

  double operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n)]; }

  void extend(std::int64_t limit) {
    if (limit <= this->limit()) return;
    const auto size = static_cast<std::size_t>(limit + 1);
    std::vector<std::int64_t> spf(size, 0);
    values_.assign(size, 0.0);
    for (std::size_t i = 2; i < size; ++i) {
      if (spf[i] != 0) continue;
      for (std::size_t j = i; j < size; j += i) {
        if (spf[j] == 0) spf[j] = static_cast<std::int64_t>(i);
      }
    }
    for (std::size_t n = 2; n < size; ++n) {
      std::int64_t m = static_cast<std::int64_t>(n);
      const std::int64_t p = spf[n];
      while (m % p == 0) m /= p;
      if (m == 1) values_[n] = std::log(static_cast<double>(p));
    }
  }

 private:
  std::vector<double> values_{0.0};
};

}  // namespace lchi

#endif  // LCHI_ARITHMETIC_HPP
