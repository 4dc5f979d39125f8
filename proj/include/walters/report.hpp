#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "walters/pressure.hpp"
#include "walters/zerotemp.hpp"

namespace walters {

struct ValidateReport {
  std::string name;
  std::vector<std::string> notes;
  double sum_a_deviation = 0.0;  // sum_{j>=2}(a_j - a)
  double sum_c_deviation = 0.0;
  double sup_f = 0.0;
  bool limits_equal = false;  // a == c
  bool hypothesis_pass = false;
  int j0 = -1;
  int j1 = -1;
  bool nonpositive = false;
};

struct EigenEntry {
  std::string pattern;
  double log_h = 0.0;
  double h = 0.0;
};

struct EigenReport {
  double t = 0.0;
  double pressure = 0.0;
  double log_beta_inf = 0.0;
  std::vector<EigenEntry> values;
  double max_residual = 0.0;
  int q_max = 0;
};

struct CylinderEntry {
  std::string word;
  double log_mu = 0.0;
  double mu = 0.0;
};

struct GibbsReport {
  double t = 0.0;
  double pressure = 0.0;
  double log_s0 = 0.0;
  double log_s1 = 0.0;
  double mu0 = 0.0;
  double mu1 = 0.0;
  double ratio_log = 0.0;
  std::vector<CylinderEntry> cylinders;
};

struct OracleRow {
  int k = 0;
  double log_lambda = 0.0;
  double gap = 0.0;
  std::vector<CylinderEntry> cylinders;
};

struct OracleReport {
  double t = 0.0;
  double pressure = 0.0;
  std::string extension;
  std::vector<OracleRow> rows;
};

struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Checklist {
  std::string title;
  std::vector<CheckItem> items;
  bool all_passed() const;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PressureSolution, t, pressure, epsilon, reference, iterations,
                                   residual)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ValidateReport, name, notes, sum_a_deviation, sum_c_deviation,
                                   sup_f, limits_equal, hypothesis_pass, j0, j1, nonpositive)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EigenEntry, pattern, log_h, h)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EigenReport, t, pressure, log_beta_inf, values, max_residual,
                                   q_max)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CylinderEntry, word, log_mu, mu)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GibbsReport, t, pressure, log_s0, log_s1, mu0, mu1, ratio_log,
                                   cylinders)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OracleRow, k, log_lambda, gap, cylinders)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OracleReport, t, pressure, extension, rows)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CheckItem, name, passed, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Checklist, title, items)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SlopeFit, slope, intercept, r2, t, log_values, scaled, residuals)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SubactionEntry, pattern, value)

// enums and optionals by hand
void to_json(nlohmann::json& j, const SelectionVerdict& v);
void from_json(const nlohmann::json& j, SelectionVerdict& v);
void to_json(nlohmann::json& j, const RateEstimate& v);
void from_json(const nlohmann::json& j, RateEstimate& v);
void to_json(nlohmann::json& j, const LimitReport& v);
void from_json(const nlohmann::json& j, LimitReport& v);

}  // namespace walters
