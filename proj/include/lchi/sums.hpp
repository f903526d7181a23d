// sums.hpp - the dual sums over zeros and over prime powers.
//
//   Sigma1(T) = sum_{0 < gamma <= T} xi^{-rho} X_{conj chi}(1 - rho)
//   Sigma2(T) = tau(conj chi)/q sum_{n <= qT/(2 pi xi)} Lambda(n) chi(n) e(-n xi / q)
//
// with rho = 1/2 + i gamma over the supplied critical-line zeros, and their
// smoothed versions weighted by a bump B. Every sum runs in ascending index
// order with compensated accumulation; sharded evaluation merges partial
// sums in shard order.

#ifndef LCHI_SUMS_HPP
#define LCHI_SUMS_HPP

#include <cmath>
#include <optional>
#include <thread>
#include <vector>

#include "lchi/arithmetic.hpp"
#include "lchi/bump.hpp"
#include "lchi/characters.hpp"
#include "lchi/errors.hpp"
#include "lchi/gauss.hpp"
#include "lchi/lfunc.hpp"
#include "lchi/quadrature.hpp"
#include "lchi/zeros.hpp"

namespace lchi {

/// A positive twist parameter; rational values keep e(-n xi / q) exact.
class Xi {
 public:
  Xi(const RationalXi& r) : value_(r.value()), rational_(r) {}  // NOLINT(google-explicit-constructor)
  Xi(double v) : value_(v) {                                      // NOLINT(google-explicit-constructor)
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("xi must be a positive real");
  }

  double value() const noexcept { return value_; }
  const std::optional<RationalXi>& rational() const noexcept { return rational_; }

  /// exponent of chi(n) e(-n xi / q) as a root of unity, or nullopt when chi(n) = 0
  std::optional<cplx> twisted(const DirichletCharacter& chi, std::int64_t n) const {
    const auto e = chi.exponent(n);
    if (!e) return std::nullopt;
    const std::int64_t q = chi.modulus();
    if (rational_) {
      const std::int64_t m = q * rational_->k();
      return unit_root(*e - Rational(mod_floor(n % m * (rational_->h() % m), m), m));
    }
    return unit_root(*e) * unit_root(-static_cast<double>(n) * value_ / static_cast<double>(q));
  }

 private:
  double value_;
  std::optional<RationalXi> rational_;
};

struct DualSumPoint {
  double abscissa = 0.0;
  cplx sigma1;
  cplx sigma2;
  cplx combined;
  double normalizer = 1.0;
  double ratio = 0.0;
};

/// Largest integer n with n <= x, rounding up when x is within a few ulps
/// below an integer.
inline std::int64_t floor_cutoff(double x) {
  if (!(x >= 0.0)) return 0;
  const double f = std::floor(x);
  const double up = f + 1.0;
  if (up - x <= 8.0 * std::numeric_limits<double>::epsilon() * up) return static_cast<std::int64_t>(up);
  return static_cast<std::int64_t>(f);
}

/// Sums term(i) for i in [0, count) over `shards` contiguous ranges, each
/// accumulated separately, then merges the partial sums in range order.
template <class Term>
cplx sharded_sum(std::size_t count, const Term& term, unsigned shards = 1, bool parallel = false) {
  shards = std::max(1u, std::min<unsigned>(shards, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<cplx> partial(shards);
  auto run = [&](unsigned s) {
    CompensatedSum<cplx> acc;
    const std::size_t lo = count * s / shards;
    const std::size_t hi = count * (s + 1) / shards;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[s] = acc.value();
  };
  if (parallel && shards > 1) {
    std::vector<std::thread> pool;
    for (unsigned s = 0; s < shards; ++s) pool.emplace_back(run, s);
    for (auto& th : pool) th.join();
  } else {
    for (unsigned s = 0; s < shards; ++s) run(s);
  }
  CompensatedSum<cplx> acc;
  for (const auto& p : partial) acc += p;
  return acc.value();
}

/// xi^{-rho} X_{conj chi}(1 - rho) for rho = 1/2 + i gamma.
class ZeroTermKernel {
 public:
  ZeroTermKernel(const DirichletCharacter& chi, const Xi& xi)
      : q_(chi.modulus()), kappa_(chi.kappa()), eps_bar_(root_number(chi.conj())), log_xi_(std::log(xi.value())) {}

  cplx operator()(double gamma) const {
    const cplx rho{0.5, gamma};
    return std::exp(-rho * log_xi_) * x_factor_value<double>(cplx{0.5, -gamma}, eps_bar_, q_, kappa_);
  }

 private:
  std::int64_t q_;
  int kappa_;
  cplx eps_bar_;
  double log_xi_;
};

inline void check_zero_list(const DirichletCharacter& chi, const ZeroList& zeros, double needed, const char* who) {
  if (!(zeros.chi == chi)) throw std::invalid_argument(std::string(who) + ": zero list belongs to another character");
  if (zeros.ceiling < needed) {
    throw CoverageError(std::string(who) + ": zero list ceiling " + std::to_string(zeros.ceiling) +
                        " is below the required height " + std::to_string(needed));
  }
}

inline cplx sigma1_sharp(const DirichletCharacter& chi, const Xi& xi, double T, const ZeroList& zeros,
                         unsigned shards = 1) {
  check_zero_list(chi, zeros, T, "sigma1_sharp");
  const auto gammas = zeros.positive_up_to(T);
  const ZeroTermKernel kernel(chi, xi);
  return sharded_sum(gammas.size(), [&](std::size_t i) { return kernel(gammas[i]); }, shards);
}

/// tau(conj chi) / q for the prime-power sums.
inline cplx prime_sum_prefactor(const DirichletCharacter& chi) {
  return gauss_sum(chi.conj()) / static_cast<double>(chi.modulus());
}

/// Cutoff floor(q T / (2 pi xi)) of Sigma2(T).
inline std::int64_t sigma2_cutoff(const DirichletCharacter& chi, const Xi& xi, double T) {
  return floor_cutoff(static_cast<double>(chi.modulus()) * T / (kTwoPi * xi.value()));
}

inline cplx sigma2_sharp(const DirichletCharacter& chi, const Xi& xi, double T, unsigned shards = 1) {
  if (!(T > 0.0)) throw std::invalid_argument("sigma2_sharp: requires T > 0");
  const std::int64_t n_max = sigma2_cutoff(chi, xi, T);
  if (n_max < 2) return {0.0, 0.0};
  const MangoldtTable lambda(n_max);
  const auto count = static_cast<std::size_t>(n_max - 1);
  const cplx inner = sharded_sum(
      count,
      [&](std::size_t i) {
        const auto n = static_cast<std::int64_t>(i) + 2;
        if (lambda[n] == 0.0) return cplx{};
        const auto w = xi.twisted(chi, n);
        return w ? lambda[n] * *w : cplx{};
      },
      shards);
  return prime_sum_prefactor(chi) * inner;
}

/// sum over zeros of xi^{-rho} X_{conj chi}(1 - rho) B(gamma / (2 pi xi X)).
inline cplx smooth_zero_sum(const DirichletCharacter& chi, const Xi& xi, double X, const BumpWeight& bump,
                            const ZeroList& zeros) {
  if (!(X > 0.0)) throw std::invalid_argument("smooth_zero_sum: requires X > 0");
  const double scale = kTwoPi * xi.value() * X;
  check_zero_list(chi, zeros, scale * bump.b(), "smooth_zero_sum");
  const ZeroTermKernel kernel(chi, xi);
  CompensatedSum<cplx> acc;
  for (const auto& z : zeros.zeros) {
    const double u = z.gamma / scale;
    if (u <= bump.a() || u >= bump.b()) continue;
    acc += kernel(z.gamma) * bump(u);
  }
  return acc.value();
}

/// tau(conj chi)/q sum_n Lambda(n) chi(n) e(-n xi / q) B(n / (q X)).
inline cplx smooth_prime_sum(const DirichletCharacter& chi, const Xi& xi, double X, const BumpWeight& bump) {
  if (!(X > 0.0)) throw std::invalid_argument("smooth_prime_sum: requires X > 0");
  const double qx = static_cast<double>(chi.modulus()) * X;
  const auto n_lo = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(qx * bump.a())));
  const auto n_hi = static_cast<std::int64_t>(std::floor(qx * bump.b()));
  if (n_hi < n_lo) return {0.0, 0.0};
  const MangoldtTable lambda(n_hi);
  CompensatedSum<cplx> acc;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    if (lambda[n] == 0.0) continue;
    const double w = bump(static_cast<double>(n) / qx);
    if (w == 0.0) continue;
    const auto tw = xi.twisted(chi, n);
    if (tw) acc += lambda[n] * w * *tw;
  }
  return prime_sum_prefactor(chi) * acc.value();
}

/// smooth_zero_sum + C_B * C~_{chi,xi} * X.
inline cplx grh_dagger_lhs(const DirichletCharacter& chi, const RationalXi& xi, double X, const BumpWeight& bump,
                           const ZeroList& zeros) {
  return smooth_zero_sum(chi, xi, X, bump, zeros) + bump.integral() * c_tilde(chi, xi) * X;
}

namespace detail {

/// -int_a^b B'(u) S(u) du for a right-continuous step function S that is
/// constant between the sorted jump points `jumps` (in u) and increases by
/// increments[i] at jumps[i]. Each piece is integrated by quadrature.
inline cplx stieltjes_by_parts(const BumpWeight& bump, const std::vector<double>& jumps,
                               const std::vector<cplx>& increments, const QuadratureOptions& opt) {
  CompensatedSum<cplx> level;
  std::size_t next = 0;
  while (next < jumps.size() && jumps[next] <= bump.a()) level += increments[next++];
  CompensatedSum<cplx> acc;
  double left = bump.a();
  auto dB = [&](double u) { return bump.derivative(u); };
  while (left < bump.b()) {
    const double right = (next < jumps.size() && jumps[next] < bump.b()) ? jumps[next] : bump.b();
    if (right > left) {
      const double piece = integrate<double>(dB, left, right, opt).value;
      acc -= piece * level.value();
    }
    left = right;
    if (next < jumps.size() && jumps[next] < bump.b()) {
      while (next < jumps.size() && jumps[next] == right) level += increments[next++];
    } else {
      break;
    }
  }
  return acc.value();
}

}  // namespace detail

/// -int_0^infty B'(u) Sigma1(2 pi xi X u) du, integrated piecewise by
/// quadrature between consecutive zero ordinates.
inline cplx smooth_zero_sum_by_parts(const DirichletCharacter& chi, const Xi& xi, double X, const BumpWeight& bump,
                                     const ZeroList& zeros, const QuadratureOptions& opt = {1e-14, 1e-12, 2000}) {
  const double scale = kTwoPi * xi.value() * X;
  check_zero_list(chi, zeros, scale * bump.b(), "smooth_zero_sum_by_parts");
  const ZeroTermKernel kernel(chi, xi);
  std::vector<double> jumps;
  std::vector<cplx> increments;
  for (const auto& z : zeros.zeros) {
    if (z.gamma <= 0.0 || z.gamma / scale >= bump.b()) continue;
    jumps.push_back(z.gamma / scale);
    increments.push_back(kernel(z.gamma));
  }
  return detail::stieltjes_by_parts(bump, jumps, increments, opt);
}

/// -int_0^infty B'(u) Sigma3(q X u) du with Sigma3(v) = Sigma2(2 pi xi v / q).
inline cplx smooth_prime_sum_by_parts(const DirichletCharacter& chi, const Xi& xi, double X, const BumpWeight& bump,
                                      const QuadratureOptions& opt = {1e-14, 1e-12, 2000}) {
  const double qx = static_cast<double>(chi.modulus()) * X;
  const auto n_hi = static_cast<std::int64_t>(std::floor(qx * bump.b()));
  std::vector<double> jumps;
  std::vector<cplx> increments;
  if (n_hi >= 2) {
    const MangoldtTable lambda(n_hi);
    const cplx pre = prime_sum_prefactor(chi);
    for (std::int64_t n = 2; n <= n_hi; ++n) {
      if (lambda[n] == 0.0) continue;
      const auto tw = xi.twisted(chi, n);
      if (!tw) continue;
      jumps.push_back(static_cast<double>(n) / qx);
      increments.push_back(pre * lambda[n] * *tw);
    }
  }
  return detail::stieltjes_by_parts(bump, jumps, increments, opt);
}

}  // namespace lchi

#endif  // LCHI_SUMS_HPP
