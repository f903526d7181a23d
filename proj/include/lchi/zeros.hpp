// zeros.hpp - critical-line zeros of L(s, chi) from sign changes of the
// rotated Z-function Z_chi(t) = exp(i theta(t)) L(1/2 + it, chi).
//
// Completeness is heuristic: a scan only sees zeros where Z changes sign
// between grid points. Near-tangencies (|Z| < 1e-6 without a sign change)
// are flagged rather than listed, and the count is checked against the
// main term of the zero-density formula.

#ifndef LCHI_ZEROS_HPP
#define LCHI_ZEROS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lchi/characters.hpp"
#include "lchi/errors.hpp"
#include "lchi/gauss.hpp"
#include "lchi/lfunc.hpp"

namespace lchi {

class ZFunction {
 public:
  explicit ZFunction(DirichletCharacter chi, EulerMaclaurinConfig cfg = {})
      : chi_(std::move(chi)), cfg_(cfg) {
    if (!chi_.primitive()) throw std::invalid_argument("z_function: character must be primitive");
    epsilon_ = root_number(chi_);
  }

  const DirichletCharacter& character() const noexcept { return chi_; }

  /// Real Z_chi(t); throws PhaseError if the rotation leaves an imaginary
  /// part above 1e-7 (1 + |Z|).
  double operator()(double t) const {
    const cplx z = std::polar(1.0, z_rotation_phase(t, chi_, epsilon_)) * l_value({0.5, t}, chi_, cfg_);
    if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z.real()))) {
      throw PhaseError("z_function: rotated value not real at t = " + std::to_string(t));
    }
    return z.real();
  }

 private:
  DirichletCharacter chi_;
  EulerMaclaurinConfig cfg_;
  cplx epsilon_;
};

inline double z_function(double t, const DirichletCharacter& chi) { return ZFunction(chi)(t); }

struct ZeroEntry {
  double gamma = 0.0;
  double halfwidth = 0.0;
  double z_left = 0.0;   // Z_chi(gamma - halfwidth)
  double z_right = 0.0;  // Z_chi(gamma + halfwidth)
};

/// A grid point where |Z| dipped below the tangency threshold without a sign change.
struct FlaggedPoint {
  double t = 0.0;
  double z = 0.0;
};

/// Two-sided list of critical-line zero ordinates in [-ceiling, ceiling],
/// strictly ascending. The negative side comes from scanning conj(chi).
struct ZeroList {
  DirichletCharacter chi;
  std::vector<ZeroEntry> zeros;
  std::vector<FlaggedPoint> flagged;
  std::vector<std::string> warnings;
  double ceiling = 0.0;
  double step = 0.0;

  std::vector<double> ordinates() const {
    std::vector<double> out;
    out.reserve(zeros.size());
    for (const auto& z : zeros) out.push_back(z.gamma);
    return out;
  }

  /// Ordinates with 0 < gamma <= t, ascending.
  std::vector<double> positive_up_to(double t) const {
    std::vector<double> out;
    for (const auto& z : zeros) {
      if (z.gamma > 0.0 && z.gamma <= t) out.push_back(z.gamma);
    }
    return out;
  }

  std::size_t count_in(double lo, double hi) const {
    return static_cast<std::size_t>(std::count_if(zeros.begin(), zeros.end(), [&](const ZeroEntry& z) {
      return z.gamma >= lo && z.gamma <= hi;
    }));
  }
};

inline constexpr double kZeroHalfwidth = 1e-9;
inline constexpr double kTangencyThreshold = 1e-6;

/// min(0.05, pi / log(q (T + 10) / 2 pi)), with the log floored at 1.
inline double auto_step(std::int64_t q, double T) {
  const double lg = std::log(static_cast<double>(q) * (T + 10.0) / kTwoPi);
  return std::min(0.05, kPi / std::max(lg, 1.0));
}

/// Two-sided main term (T / pi) log(q T / 2 pi e) of the zero count in [-T, T].
inline double expected_count(const DirichletCharacter& chi, double T) {
  if (!(T >= 2.0)) throw std::domain_error("expected_count: requires T >= 2");
  const double q = static_cast<double>(chi.modulus());
  return T / kPi * std::log(q * T / (kTwoPi * std::numbers::e));
}

/// Half-width of the completeness window around expected_count.
inline double count_window(const DirichletCharacter& chi, double T) {
  return 2.0 + std::log(static_cast<double>(chi.modulus()) * T);
}

struct CompletenessCheck {
  bool checked = false;  // false below T = 5, where the main term is meaningless
  double found = 0.0;    // two-sided count
  double expected = 0.0;
  double window = 0.0;
  bool pass = true;
};

/// Heuristic completeness: found two-sided count within count_window of
/// expected_count. This is a density sanity check, not a proof.
inline CompletenessCheck completeness(const ZeroList& list) {
  CompletenessCheck c;
  c.found = static_cast<double>(list.zeros.size());
  if (list.ceiling < 5.0) return c;
  c.checked = true;
  c.expected = expected_count(list.chi, list.ceiling);
  c.window = count_window(list.chi, list.ceiling);
  c.pass = std::abs(c.found - c.expected) <= c.window;
  return c;
}

namespace detail {

struct SideScan {
  std::vector<ZeroEntry> zeros;
  std::vector<FlaggedPoint> flagged;
};

inline ZeroEntry refine_bracket(const ZFunction& z, double lo, double hi, double z_lo, double z_hi) {
  while (0.5 * (hi - lo) > kZeroHalfwidth) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double z_mid = z(mid);
    if (z_mid == 0.0) {
      lo = hi = mid;
      z_lo = z_hi = 0.0;
      break;
    }
    if ((z_mid < 0.0) == (z_lo < 0.0)) {
      lo = mid;
      z_lo = z_mid;
    } else {
      hi = mid;
      z_hi = z_mid;
    }
  }
  return {0.5 * (lo + hi), 0.5 * (hi - lo), z_lo, z_hi};
}

/// Scans grid cells [first, last) of t_j = min(j * step, T), j <= total.
inline SideScan scan_cells(const ZFunction& z, double T, double step, std::size_t first, std::size_t last,
                           std::size_t total) {
  auto grid = [&](std::size_t j) { return std::min(static_cast<double>(j) * step, T); };
  SideScan out;
  std::vector<double> values;
  values.reserve(last - first + 1);
  for (std::size_t j = first; j <= last; ++j) values.push_back(z(grid(j)));

  for (std::size_t j = first; j < last; ++j) {
    const double a = grid(j);
    const double b = grid(j + 1);
    const double za = values[j - first];
    const double zb = values[j + 1 - first];
    if (za == 0.0) {
      if (a > 0.0) out.zeros.push_back({a, 0.0, za, za});
      continue;
    }
    if (zb != 0.0 && (za < 0.0) != (zb < 0.0)) {
      out.zeros.push_back(refine_bracket(z, a, b, za, zb));
    }
  }
  if (last == total && values.back() == 0.0) out.zeros.push_back({grid(last), 0.0, 0.0, 0.0});
  for (std::size_t j = first; j <= last; ++j) {
    const double v = values[j - first];
    if (v == 0.0 || std::abs(v) >= kTangencyThreshold) continue;
    const bool left_change = j > first && (values[j - 1 - first] < 0.0) != (v < 0.0);
    const bool right_change = j < last && (values[j + 1 - first] < 0.0) != (v < 0.0);
    if (!left_change && !right_change) out.flagged.push_back({grid(j), v});
  }
  return out;
}

/// Zeros of Z on (0, T], sharded over `threads` contiguous cell ranges. The
/// merge only concatenates in shard order, so the result does not depend on
/// the shard layout.
inline SideScan scan_side(const ZFunction& z, double T, double step, unsigned threads) {
  const auto cells = static_cast<std::size_t>(std::ceil(T / step - 1e-12));
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cells / 64, 1))));
  std::vector<SideScan> parts(threads);
  std::vector<std::size_t> bounds(threads + 1);
  for (unsigned i = 0; i <= threads; ++i) bounds[i] = cells * i / threads;
  if (threads == 1) {
    parts[0] = scan_cells(z, T, step, 0, cells, cells);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back([&, i] {
        try {
          parts[i] = scan_cells(z, T, step, bounds[i], bounds[i + 1], cells);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  SideScan out;
  for (auto& p : parts) {
    for (const auto& zero : p.zeros) {
      if (!out.zeros.empty() && std::abs(out.zeros.back().gamma - zero.gamma) <= 2.0 * kZeroHalfwidth) continue;
      out.zeros.push_back(zero);
    }
    for (const auto& f : p.flagged) {
      if (!out.flagged.empty() && out.flagged.back().t == f.t) continue;
      out.flagged.push_back(f);
    }
  }
  return out;
}

}  // namespace detail

/// Locates zeros with 0 < |gamma| <= T. `step` defaults to auto_step(q, T).
inline ZeroList scan_zeros(const DirichletCharacter& chi, double T, std::optional<double> step = std::nullopt,
                           unsigned threads = 1, const EulerMaclaurinConfig& cfg = {}) {
  if (!(T >= 2.0)) throw std::domain_error("scan_zeros: requires T >= 2");
  check_ordinate(T, "scan_zeros");
  const double h = step.value_or(auto_step(chi.modulus(), T));
  if (!(h > 0.0)) throw std::invalid_argument("scan_zeros: step must be positive");

  ZeroList list;
  list.chi = chi;
  list.ceiling = T;
  list.step = h;
  const double spacing = kTwoPi / std::max(std::log(static_cast<double>(chi.modulus()) * T / kTwoPi), 1.0);
  if (h > 0.25 * spacing) {
    list.warnings.push_back("step " + std::to_string(h) + " exceeds a quarter of the mean zero spacing " +
                            std::to_string(spacing) + " at height T; zeros may be missed");
  }

  const ZFunction z(chi, cfg);
  const auto pos = detail::scan_side(z, T, h, threads);
  std::vector<ZeroEntry> neg;
  std::vector<FlaggedPoint> neg_flagged;
  if (chi.real()) {
    for (const auto& e : pos.zeros) neg.push_back({-e.gamma, e.halfwidth, 0.0, 0.0});
    for (const auto& f : pos.flagged) neg_flagged.push_back({-f.t, f.z});
  } else {
    const auto other = detail::scan_side(ZFunction(chi.conj(), cfg), T, h, threads);
    for (const auto& e : other.zeros) neg.push_back({-e.gamma, e.halfwidth, 0.0, 0.0});
    for (const auto& f : other.flagged) neg_flagged.push_back({-f.t, f.z});
  }
  for (auto& e : neg) {
    e.z_left = z(e.gamma - e.halfwidth);
    e.z_right = z(e.gamma + e.halfwidth);
  }
  std::reverse(neg.begin(), neg.end());
  std::reverse(neg_flagged.begin(), neg_flagged.end());
  list.zeros = std::move(neg);
  list.zeros.insert(list.zeros.end(), pos.zeros.begin(), pos.zeros.end());
  list.flagged = std::move(neg_flagged);
  list.flagged.insert(list.flagged.end(), pos.flagged.begin(), pos.flagged.end());
  if (!list.flagged.empty()) {
    list.warnings.push_back(std::to_string(list.flagged.size()) +
                            " near-tangency point(s) flagged; zero multiplicity there is not resolved");
  }
  return list;
}

}  // namespace lchi

#endif  // LCHI_ZEROS_HPP
