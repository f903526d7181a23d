// report.hpp - structured experiment reports and their JSON form.

#ifndef LCHI_REPORT_HPP
#define LCHI_REPORT_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lchi/numeric.hpp"

namespace lchi {

inline constexpr const char* kVersion = "1.0.0";

using ojson = nlohmann::ordered_json;

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation = "<=";  // value <relation> threshold
  bool pass = false;
};

inline Check check_le(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, "<=", value <= threshold};
}

inline Check check_ge(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, ">=", value >= threshold};
}

/// One experiment: parameters, per-abscissa rows, fitted constants/slopes
/// and pass/fail checks. Rows and fits keep insertion order so the JSON
/// text is reproducible.
struct ExperimentReport {
  std::string experiment;
  ojson params = ojson::object();
  std::vector<ojson> rows;
  std::vector<std::pair<std::string, double>> fits;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  double fit(const std::string& key) const {
    for (const auto& [k, v] : fits) {
      if (k == key) return v;
    }
    throw std::out_of_range("report has no fit '" + key + "'");
  }

  const Check& check(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return c;
    }
    throw std::out_of_range("report has no check '" + name + "'");
  }
};

inline void put_complex(ojson& row, const std::string& key, cplx z) {
  row["re_" + key] = z.real();
  row["im_" + key] = z.imag();
}

inline ojson to_json(const ExperimentReport& r) {
  ojson j;
  j["experiment"] = r.experiment;
  j["params"] = r.params;
  j["rows"] = ojson::array();
  for (const auto& row : r.rows) j["rows"].push_back(row);
  ojson fits = ojson::object();
  for (const auto& [k, v] : r.fits) fits[k] = v;
  j["fits"] = fits;
  j["checks"] = ojson::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"relation", c.relation},
                           {"pass", c.pass}});
  }
  j["notes"] = r.notes;
  j["passed"] = r.passed();
  return j;
}

}  // namespace lchi

#endif  // LCHI_REPORT_HPP
