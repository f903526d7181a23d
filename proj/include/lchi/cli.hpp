// cli.hpp - run configuration, CSV/JSON emission and the lchi dispatcher.

#ifndef LCHI_CLI_HPP
#define LCHI_CLI_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "lchi/bump.hpp"
#include "lchi/characters.hpp"
#include "lchi/gauss.hpp"
#include "lchi/lfunc.hpp"
#include "lchi/report.hpp"
#include "lchi/sums.hpp"
#include "lchi/verify.hpp"
#include "lchi/zeros.hpp"

namespace lchi {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// --help or --version: the text goes to stdout and the exit code is 0.
struct InfoRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Largest ordinate a user may request; internal zero supplies may go higher.
inline constexpr double kUserOrdinateCap = 500.0;

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto lo = s.find_first_not_of(" \t\r");
  if (lo == std::string::npos) return "";
  return s.substr(lo, s.find_last_not_of(" \t\r") - lo + 1);
}

inline double parse_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(x)) {
    throw UsageError("invalid value for " + key + ": '" + v + "'");
  }
  return x;
}

inline std::int64_t parse_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw UsageError("invalid value for " + key + ": '" + v + "'");
  return x;
}

inline std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(key, trim(item)));
  if (out.empty()) throw UsageError("empty list for " + key);
  return out;
}

inline std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

}  // namespace detail

/// Everything that determines a run. The canonical text form lists the set
/// keys one per line in a fixed order; parse(canonical()) reproduces it.
struct RunConfig {
  std::string subcommand;
  std::string experiment;
  std::optional<std::int64_t> q, q_tilde;
  std::optional<int> chi, psi, points;
  std::optional<RationalXi> xi;
  std::optional<double> sigma, t, T, step, X, Tmin, Tmax, Xmin, Xmax, eps, v, c, a, b, u;
  std::optional<std::vector<double>> T_grid, X_grid;
  std::optional<std::pair<double, double>> bump;
  bool smooth = false;
  double k = 5.0;
  int quad_budget = 400000;
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  std::optional<std::string> out;

  /// Keys in canonical order; they double as the long CLI flag names.
  static const std::vector<std::string>& keys() {
    static const std::vector<std::string> k = {"subcommand", "experiment", "q",      "chi",   "qt",     "psi",
                                               "xi",         "sigma",      "t",      "T",     "step",   "smooth",
                                               "X",          "Tmin",       "Tmax",   "Xmin",  "Xmax",   "points",
                                               "T-grid",     "X-grid",     "bump",   "eps",   "v",      "c",
                                               "a",          "b",          "u",      "k",     "quad-budget",
                                               "seed",       "threads",    "out"};
    return k;
  }

  void set(const std::string& key, const std::string& raw) {
    using namespace detail;
    const std::string value = trim(raw);
    auto real = [&] { return parse_real(key, value); };
    auto integer = [&] { return parse_integer(key, value); };
    if (key == "subcommand") {
      subcommand = value;
    } else if (key == "experiment") {
      experiment = value;
    } else if (key == "q") {
      q = integer();
    } else if (key == "chi") {
      chi = static_cast<int>(integer());
    } else if (key == "qt") {
      q_tilde = integer();
    } else if (key == "psi") {
      psi = static_cast<int>(integer());
    } else if (key == "xi") {
      try {
        xi = RationalXi::parse(value);
      } catch (const std::invalid_argument&) {
        throw UsageError("malformed xi: '" + value + "'");
      }
    } else if (key == "sigma") {
      sigma = real();
    } else if (key == "t") {
      t = real();
    } else if (key == "T") {
      T = real();
    } else if (key == "step") {
      step = real();
    } else if (key == "smooth") {
      if (value == "true" || value == "1" || value.empty()) {
        smooth = true;
      } else if (value == "false" || value == "0") {
        smooth = false;
      } else {
        throw UsageError("invalid value for smooth: '" + value + "'");
      }
    } else if (key == "X") {
      X = real();
    } else if (key == "Tmin") {
      Tmin = real();
    } else if (key == "Tmax") {
      Tmax = real();
    } else if (key == "Xmin") {
      Xmin = real();
    } else if (key == "Xmax") {
      Xmax = real();
    } else if (key == "points") {
      points = static_cast<int>(integer());
    } else if (key == "T-grid") {
      T_grid = parse_list(key, value);
    } else if (key == "X-grid") {
      X_grid = parse_list(key, value);
    } else if (key == "bump") {
      const auto ab = parse_list(key, value);
      if (ab.size() != 2) throw UsageError("bump must be given as a,b");
      bump = std::pair{ab[0], ab[1]};
    } else if (key == "eps") {
      eps = real();
    } else if (key == "v") {
      v = real();
    } else if (key == "c") {
      c = real();
    } else if (key == "a") {
      a = real();
    } else if (key == "b") {
      b = real();
    } else if (key == "u") {
      u = real();
    } else if (key == "k") {
      k = real();
    } else if (key == "quad-budget") {
      quad_budget = static_cast<int>(integer());
    } else if (key == "seed") {
      seed = static_cast<std::uint64_t>(integer());
    } else if (key == "threads") {
      const auto n = integer();
      if (n < 1) throw UsageError("threads must be at least 1");
      threads = static_cast<unsigned>(n);
    } else if (key == "out") {
      out = value;
    } else {
      throw UsageError("unknown configuration key '" + key + "'");
    }
  }

  /// key=value lines. Without `runtime` the keys that cannot change any
  /// computed value (threads, out) are left out.
  std::string canonical(bool runtime = true) const {
    std::string s;
    auto put = [&](const std::string& key, const std::string& value) { s += key + "=" + value + "\n"; };
    auto opt_real = [&](const std::string& key, const std::optional<double>& x) {
      if (x) put(key, format_double(*x));
    };
    if (!subcommand.empty()) put("subcommand", subcommand);
    if (!experiment.empty()) put("experiment", experiment);
    if (q) put("q", std::to_string(*q));
    if (chi) put("chi", std::to_string(*chi));
    if (q_tilde) put("qt", std::to_string(*q_tilde));
    if (psi) put("psi", std::to_string(*psi));
    if (xi) put("xi", xi->str());
    opt_real("sigma", sigma);
    opt_real("t", t);
    opt_real("T", T);
    opt_real("step", step);
    if (smooth) put("smooth", "true");
    opt_real("X", X);
    opt_real("Tmin", Tmin);
    opt_real("Tmax", Tmax);
    opt_real("Xmin", Xmin);
    opt_real("Xmax", Xmax);
    if (points) put("points", std::to_string(*points));
    if (T_grid) put("T-grid", detail::join(*T_grid));
    if (X_grid) put("X-grid", detail::join(*X_grid));
    if (bump) put("bump", detail::join({bump->first, bump->second}));
    opt_real("eps", eps);
    opt_real("v", v);
    opt_real("c", c);
    opt_real("a", a);
    opt_real("b", b);
    opt_real("u", u);
    put("k", format_double(k));
    put("quad-budget", std::to_string(quad_budget));
    put("seed", std::to_string(seed));
    if (runtime) {
      put("threads", std::to_string(threads));
      if (out) put("out", *out);
    }
    return s;
  }

  /// Reads key=value lines; blank lines and lines starting with '#' are skipped.
  void apply_text(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
      ++lineno;
      line = detail::trim(line);
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
      set(detail::trim(line.substr(0, eq)), line.substr(eq + 1));
    }
  }

  static RunConfig parse(const std::string& text) {
    RunConfig cfg;
    cfg.apply_text(text);
    return cfg;
  }
};

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return RunConfig::parse(ss.str());
}

// ---------------------------------------------------------------------------
// emission

/// '#'-prefixed provenance lines placed ahead of a CSV header.
inline std::string csv_preamble(const RunConfig& cfg) {
  std::string s = std::string("# lchi ") + kVersion + "\n";
  std::stringstream ss(cfg.canonical(false));
  std::string line;
  while (std::getline(ss, line)) s += "# " + line + "\n";
  return s;
}

inline ojson provenance(const RunConfig& cfg) {
  return {{"tool", "lchi"}, {"version", kVersion}, {"config", cfg.canonical(false)}};
}

inline ojson report_document(const ExperimentReport& r, const RunConfig& cfg) {
  ojson doc = provenance(cfg);
  const ojson body = to_json(r);
  for (const auto& [key, value] : body.items()) doc[key] = value;
  return doc;
}

inline ojson complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string to_csv(const CsvTable& t, const RunConfig& cfg) {
  std::string s = csv_preamble(cfg);
  for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
  s += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
    s += "\n";
  }
  return s;
}

/// Reads a table written by to_csv: skips '#' lines, returns header + rows.
inline CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (t.header.empty()) {
      t.header = std::move(fields);
    } else {
      t.rows.push_back(std::move(fields));
    }
  }
  return t;
}

inline void write_output(const std::string& text, const RunConfig& cfg, std::ostream& stdout_stream) {
  if (!cfg.out) {
    stdout_stream << text;
    return;
  }
  std::ofstream f(*cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + *cfg.out + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for output file '" + *cfg.out + "'");
}

// ---------------------------------------------------------------------------
// subcommands

namespace detail {

template <class T>
const T& need(const std::optional<T>& v, const char* flag, const std::string& who) {
  if (!v) throw UsageError(who + " requires --" + flag);
  return *v;
}

inline void cap_ordinate(double t, const char* flag) {
  if (!std::isfinite(t) || std::abs(t) > kUserOrdinateCap) {
    throw UsageError(std::string("--") + flag + " " + format_double(t) +
                     " exceeds the binary64 safety cap (500)");
  }
}

inline DirichletCharacter selected(const RunConfig& cfg, const std::string& who) {
  const auto q = need(cfg.q, "q", who);
  const auto label = need(cfg.chi, "chi", who);
  if (q < 1) throw UsageError("--q must be positive");
  try {
    return character(q, label);
  } catch (const std::out_of_range&) {
    throw UsageError("unknown character label " + std::to_string(label) + " for modulus " + std::to_string(q));
  }
}

inline DirichletCharacter selected_psi(const RunConfig& cfg, const std::string& who) {
  const auto q = need(cfg.q_tilde, "qt", who);
  const auto label = need(cfg.psi, "psi", who);
  if (q < 1) throw UsageError("--qt must be positive");
  try {
    return character(q, label);
  } catch (const std::out_of_range&) {
    throw UsageError("unknown character label " + std::to_string(label) + " for modulus " + std::to_string(q));
  }
}

inline BumpWeight selected_bump(const RunConfig& cfg) {
  const auto ab = cfg.bump.value_or(std::pair{1.0, 2.0});
  if (!(ab.first > 0.0 && ab.second > ab.first)) throw UsageError("--bump needs 0 < a < b");
  return default_bump(ab.first, ab.second);
}

inline std::vector<double> grid(const std::optional<std::vector<double>>& explicit_grid, const std::optional<double>& lo,
                                const std::optional<double>& hi, const std::optional<int>& points, int default_points,
                                const char* name, const std::string& who) {
  if (explicit_grid) return *explicit_grid;
  if (!lo || !hi) throw UsageError(who + " requires --" + name + "-grid or --" + name + "min/--" + name + "max");
  const int n = points.value_or(default_points);
  if (n < 1) throw UsageError("--points must be positive");
  if (!(*lo > 0.0 && *hi >= *lo)) throw UsageError(who + ": need 0 < min <= max");
  return geometric_grid(*lo, *hi, n);
}

template <class F>
ojson guarded(const F& f) {
  try {
    return f();
  } catch (const NearZeroError& e) {
    return {{"error", e.what()}};
  } catch (const std::domain_error& e) {
    return {{"error", e.what()}};
  }
}

inline void check_json(ojson& checks, bool& all, const std::string& name, double value, double threshold) {
  const bool pass = value <= threshold;
  all = all && pass;
  checks.push_back({{"name", name}, {"value", value}, {"threshold", threshold}, {"relation", "<="}, {"pass", pass}});
}

}  // namespace detail

/// Value table a, re, im, exponent_num, exponent_den (exponent r with
/// chi(a) = e(r); empty for non-units). Without --chi every character is
/// listed and a leading chi column carries the label.
inline int run_chars(const RunConfig& cfg, std::ostream& os) {
  const auto q = detail::need(cfg.q, "q", "chars");
  if (q < 1) throw UsageError("--q must be positive");
  std::vector<DirichletCharacter> chars;
  if (cfg.chi) {
    chars.push_back(detail::selected(cfg, "chars"));
  } else {
    chars = enumerate_characters(q);
  }
  CsvTable t;
  t.header = {"a", "re", "im", "exponent_num", "exponent_den"};
  if (!cfg.chi) t.header.insert(t.header.begin(), "chi");
  for (const auto& chi : chars) {
    for (std::int64_t a = 0; a < q; ++a) {
      const auto e = chi.exponent(a);
      const cplx z = chi(a);
      std::vector<std::string> row = {std::to_string(a), format_double(z.real() + 0.0),
                                      format_double(z.imag() + 0.0), e ? std::to_string(e->num) : "",
                                      e ? std::to_string(e->den) : ""};
      if (!cfg.chi) row.insert(row.begin(), std::to_string(chi.label()));
      t.rows.push_back(std::move(row));
    }
  }
  write_output(to_csv(t, cfg), cfg, os);
  return 0;
}

inline int run_gauss(const RunConfig& cfg, std::ostream& os) {
  const auto chi = detail::selected(cfg, "gauss");
  const auto g = gauss_data(chi);
  const double q = static_cast<double>(chi.modulus());
  ojson doc = provenance(cfg);
  doc["q"] = chi.modulus();
  doc["chi"] = chi.label();
  doc["kappa"] = chi.kappa();
  doc["conductor"] = chi.conductor();
  doc["primitive"] = chi.primitive();
  doc["tau"] = complex_json(g.tau);
  ojson checks = ojson::array();
  bool all = true;
  if (chi.primitive()) {
    const cplx tau_bar = gauss_sum(chi.conj());
    doc["epsilon"] = complex_json(g.epsilon);
    doc["residuals"] = {{"abs_tau_minus_sqrt_q", std::abs(std::abs(g.tau) - std::sqrt(q))},
                        {"tau_tau_bar_minus_chi_minus_one_q", std::abs(g.tau * tau_bar - chi(-1) * q)},
                        {"abs_epsilon_minus_one", std::abs(std::abs(g.epsilon) - 1.0)}};
    for (auto& [name, value] : doc["residuals"].items()) detail::check_json(checks, all, name, value, 1e-12);
  } else {
    doc["epsilon"] = nullptr;
    doc["notes"] = {"character is not primitive: root number undefined, modulus identities not checked"};
  }
  doc["checks"] = checks;
  doc["passed"] = all;
  write_output(doc.dump(2) + "\n", cfg, os);
  return all ? 0 : 2;
}

/// X_chi(s) through the Stirling main term, by conjugation when t > 0.
inline XFactorResult x_factor_asymptotic_at(ComplexPoint p, const DirichletCharacter& chi) {
  if (p.t <= -1.0) return x_factor_asymptotic(1.0 - p.sigma, -p.t, chi);
  if (p.t >= 1.0) {
    auto r = x_factor_asymptotic(1.0 - p.sigma, p.t, chi.conj());
    r.value = std::conj(r.value);
    return r;
  }
  throw std::domain_error("x_factor_asymptotic: requires |t| >= 1");
}

inline int run_eval(const RunConfig& cfg, std::ostream& os) {
  const auto chi = detail::selected(cfg, "eval");
  const double sigma = detail::need(cfg.sigma, "sigma", "eval");
  const double t = detail::need(cfg.t, "t", "eval");
  detail::cap_ordinate(t, "t");
  const ComplexPoint p{sigma, t};
  const cplx L = l_value(p, chi);
  ojson doc = provenance(cfg);
  doc["q"] = chi.modulus();
  doc["chi"] = chi.label();
  doc["s"] = complex_json(p.s());
  doc["L"] = complex_json(L);
  doc["log_derivative"] = detail::guarded([&] { return complex_json(log_derivative(p, chi)); });
  if (chi.primitive()) {
    doc["x_exact"] = detail::guarded([&] { return complex_json(x_factor_exact(p, chi).value); });
    doc["x_asymptotic"] = detail::guarded([&] {
      const auto r = x_factor_asymptotic_at(p, chi);
      ojson j = complex_json(r.value);
      j["relative_error_estimate"] = *r.relative_error_estimate;
      return j;
    });
    doc["fe_residual"] = detail::guarded([&] {
      const cplx x = x_factor_exact(p, chi).value;
      const cplx dual = l_value({1.0 - sigma, -t}, chi.conj());
      return ojson(std::abs(L - x * dual));
    });
  } else {
    doc["x_exact"] = nullptr;
    doc["x_asymptotic"] = nullptr;
    doc["fe_residual"] = nullptr;
    doc["notes"] = {"character is not primitive: functional equation factor undefined"};
  }
  write_output(doc.dump(2) + "\n", cfg, os);
  return 0;
}

inline int run_zeros(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const auto chi = detail::selected(cfg, "zeros");
  const double T = detail::need(cfg.T, "T", "zeros");
  detail::cap_ordinate(T, "T");
  if (!chi.primitive()) throw UsageError("zeros requires a primitive character");
  if (cfg.step && !(*cfg.step > 0.0)) throw UsageError("--step must be positive");
  const auto list = scan_zeros(chi, T, cfg.step, cfg.threads);
  for (const auto& w : list.warnings) err << "lchi: warning: " << w << "\n";
  struct Line {
    double gamma;
    std::vector<std::string> fields;
  };
  std::vector<Line> lines;
  for (const auto& z : list.zeros) {
    lines.push_back({z.gamma,
                     {format_double(z.gamma), format_double(z.halfwidth), format_double(z.z_left),
                      format_double(z.z_right), "0"}});
  }
  for (const auto& f : list.flagged) {
    lines.push_back({f.t, {format_double(f.t), "0", format_double(f.z), format_double(f.z), "1"}});
  }
  std::stable_sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) { return x.gamma < y.gamma; });
  CsvTable table;
  table.header = {"gamma", "halfwidth", "z_left", "z_right", "flag"};
  for (auto& l : lines) table.rows.push_back(std::move(l.fields));
  write_output(to_csv(table, cfg), cfg, os);
  return 0;
}

inline int run_sums(const RunConfig& cfg, std::ostream& os) {
  const auto chi = detail::selected(cfg, "sums");
  const RationalXi xi = detail::need(cfg.xi, "xi", "sums");
  if (cfg.smooth && !cfg.X && !cfg.X_grid) throw UsageError("--smooth requires --X");
  if (!cfg.smooth && (cfg.X || cfg.X_grid)) throw UsageError("--X is only meaningful with --smooth");
  if (!chi.primitive()) throw UsageError("sums requires a primitive character");
  const double q = static_cast<double>(chi.modulus());
  CsvTable table;
  table.header = {"abscissa", "re_s1", "im_s1", "re_s2", "im_s2", "re_comb", "im_comb", "normalizer", "ratio"};
  auto add = [&](double x, cplx s1, cplx s2, double norm) {
    const cplx comb = s1 + s2;
    table.rows.push_back({format_double(x), format_double(s1.real()), format_double(s1.imag()),
                          format_double(s2.real()), format_double(s2.imag()), format_double(comb.real()),
                          format_double(comb.imag()), format_double(norm), format_double(std::abs(comb) / norm)});
  };
  if (cfg.smooth) {
    const auto bump = detail::selected_bump(cfg);
    const auto xs = cfg.X_grid ? *cfg.X_grid : std::vector<double>{*cfg.X};
    double top = 0.0;
    for (double X : xs) {
      if (!(X > 0.0)) throw UsageError("--X must be positive");
      top = std::max(top, kTwoPi * xi.value() * X * bump.b());
    }
    detail::cap_ordinate(top, "X (zero height 2 pi xi X b)");
    const auto zeros = scan_zeros(chi, std::max(top, 2.0), std::nullopt, cfg.threads);
    for (double X : xs) {
      add(X, smooth_zero_sum(chi, xi, X, bump, zeros), smooth_prime_sum(chi, xi, X, bump),
          std::sqrt(X) * log_plus(X) * log_plus(X));
    }
  } else {
    const auto ts = cfg.T_grid ? *cfg.T_grid : std::vector<double>{detail::need(cfg.T, "T", "sums")};
    double top = 2.0;
    for (double T : ts) {
      detail::cap_ordinate(T, "T");
      if (!(T > 1.0)) throw UsageError("--T must exceed 1");
      top = std::max(top, T);
    }
    const auto zeros = scan_zeros(chi, top, std::nullopt, cfg.threads);
    for (double T : ts) {
      add(T, sigma1_sharp(chi, xi, T, zeros, cfg.threads), sigma2_sharp(chi, xi, T, cfg.threads),
          std::sqrt(q * T) * std::log(T) * std::log(T));
    }
  }
  write_output(to_csv(table, cfg), cfg, os);
  return 0;
}

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"thm31", "corB", "superbound", "lemma23", "lemma22", "cross",
                                                 "chebyshev"};
  return names;
}

/// Runs one experiment from its configuration.
inline ExperimentReport run_experiment(const RunConfig& cfg) {
  const std::string& e = cfg.experiment;
  const std::string who = "verify " + e;
  VerifyOptions opt;
  opt.k = cfg.k;
  opt.threads = cfg.threads;
  opt.seed = cfg.seed;
  opt.quadrature_budget = cfg.quad_budget;
  if (!(opt.k > 0.0)) throw UsageError("--k must be positive");

  if (e == "thm31") {
    const auto chi = detail::selected(cfg, who);
    const RationalXi xi = detail::need(cfg.xi, "xi", who);
    const auto ts = detail::grid(cfg.T_grid, cfg.Tmin, cfg.Tmax, cfg.points, 12, "T", who);
    for (double T : ts) detail::cap_ordinate(T, "T");
    if (!chi.primitive()) throw UsageError(who + " requires a primitive character");
    if (ts.size() < 8) throw UsageError(who + ": T grid needs at least 8 points (slope undefined otherwise)");
    const auto zeros = scan_zeros(chi, *std::max_element(ts.begin(), ts.end()), std::nullopt, cfg.threads);
    return thm31_cancellation(chi, xi, ts, zeros, opt);
  }
  if (e == "corB" || e == "superbound") {
    const auto chi = detail::selected(cfg, who);
    const RationalXi xi = detail::need(cfg.xi, "xi", who);
    const auto xs = detail::grid(cfg.X_grid, cfg.Xmin, cfg.Xmax, cfg.points, 5, "X", who);
    const auto bump = detail::selected_bump(cfg);
    if (!chi.primitive()) throw UsageError(who + " requires a primitive character");
    if (xs.size() < static_cast<std::size_t>(kMinSlopePoints)) {
      throw UsageError(who + ": X grid needs at least " + std::to_string(kMinSlopePoints) + " points");
    }
    const double top = kTwoPi * xi.value() * *std::max_element(xs.begin(), xs.end()) * bump.b();
    const auto zeros = scan_zeros(chi, std::max(top, 2.0), std::nullopt, cfg.threads);
    if (e == "corB") return corB_smooth_cancellation(chi, xi, xs, bump, zeros, opt);
    return superbound_envelope(chi, xi, xs, bump, zeros, cfg.eps.value_or(0.1), opt);
  }
  if (e == "lemma23") {
    const auto chi = detail::selected(cfg, who);
    if (!chi.primitive()) throw UsageError(who + " requires a primitive character");
    const double T = detail::need(cfg.T, "T", who);
    detail::cap_ordinate(T, "T");
    return lemma23_contour_check(chi, detail::need(cfg.v, "v", who), detail::need(cfg.c, "c", who), T, opt);
  }
  if (e == "lemma22") {
    return lemma22_phase_check(detail::need(cfg.a, "a", who), detail::need(cfg.b, "b", who),
                               detail::need(cfg.c, "c", who), detail::need(cfg.u, "u", who), opt);
  }
  if (e == "cross") {
    const auto chi = detail::selected(cfg, who);
    const auto psi = detail::selected_psi(cfg, who);
    if (!chi.primitive() || !psi.primitive()) throw UsageError(who + " requires primitive chi and psi");
    return cross_character_decomposition(chi, psi, detail::need(cfg.X, "X", who), detail::selected_bump(cfg), opt);
  }
  if (e == "chebyshev") {
    const auto xs = detail::grid(cfg.X_grid, cfg.Xmin, cfg.Xmax, cfg.points, 4, "X", who);
    return smooth_chebyshev_check(detail::selected_bump(cfg), xs, opt);
  }
  throw UsageError("unknown experiment '" + e + "'");
}

inline int run_verify(const RunConfig& cfg, std::ostream& os) {
  if (cfg.experiment.empty()) throw UsageError("verify requires an experiment name");
  const auto report = run_experiment(cfg);
  write_output(report_document(report, cfg).dump(2) + "\n", cfg, os);
  return report.passed() ? 0 : 2;
}

inline int dispatch(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  if (cfg.subcommand == "chars") return run_chars(cfg, os);
  if (cfg.subcommand == "gauss") return run_gauss(cfg, os);
  if (cfg.subcommand == "eval") return run_eval(cfg, os);
  if (cfg.subcommand == "zeros") return run_zeros(cfg, os, err);
  if (cfg.subcommand == "sums") return run_sums(cfg, os);
  if (cfg.subcommand == "verify") return run_verify(cfg, os);
  if (cfg.subcommand.empty()) throw UsageError("no subcommand given");
  throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
}

/// Builds the configuration from --config (if any) overlaid with the
/// command-line flags. Exposed separately so it can be tested without running.
inline RunConfig parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"lchi: Dirichlet L-function and explicit-formula experiments", "lchi"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> opts;
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value configuration file");
  for (const auto& key : RunConfig::keys()) {
    if (key == "subcommand" || key == "experiment") continue;
    if (key == "smooth") {
      opts[key] = app.add_flag("--smooth", "smooth weights (requires --X)");
      continue;
    }
    opts[key] = app.add_option("--" + key, raw[key]);
  }
  std::string experiment;
  std::vector<CLI::App*> subs;
  for (const char* name : {"chars", "gauss", "eval", "zeros", "sums", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    subs.push_back(sub);
  }
  subs.back()->add_option("experiment", experiment, "thm31|corB|superbound|lemma23|lemma22|cross|chebyshev");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw InfoRequest(app.help());
  } catch (const CLI::CallForVersion&) {
    throw InfoRequest(std::string("lchi ") + kVersion + "\n");
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg = config_path.empty() ? RunConfig{} : load_config_file(config_path);
  for (auto* sub : subs) {
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  }
  if (!experiment.empty()) cfg.experiment = experiment;
  for (const auto& [key, opt] : opts) {
    if (opt->count() == 0) continue;
    cfg.set(key, key == "smooth" ? "true" : raw[key]);
  }
  return cfg;
}

/// Entry point: 0 when every check passes, 2 when a check fails, 1 on a
/// usage or computation error.
inline int parse_and_dispatch(int argc, const char* const* argv, std::ostream& os = std::cout,
                              std::ostream& err = std::cerr) {
  try {
    const RunConfig cfg = parse_command_line(argc, argv);
    return dispatch(cfg, os, err);
  } catch (const InfoRequest& e) {
    os << e.what();
    return 0;
  } catch (const UsageError& e) {
    err << "lchi: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "lchi: error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace lchi

#endif  // LCHI_CLI_HPP
