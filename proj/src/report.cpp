#include "walters/report.hpp"

#include <algorithm>

namespace walters {

using nlohmann::json;

bool Checklist::all_passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.passed; });
}

void to_json(json& j, const SelectionVerdict& v) {
  j = json{{"verdict", to_string(v.verdict)},
           {"nonpositive", v.nonpositive},
           {"sum_a", v.sum_a},
           {"sum_c", v.sum_c},
           {"b", v.b},
           {"d", v.d},
           {"delta1_threshold", v.delta1_threshold},
           {"delta0_threshold", v.delta0_threshold}};
}

void from_json(const json& j, SelectionVerdict& v) {
  v.verdict = selection_from_string(j.at("verdict").get<std::string>());
  j.at("nonpositive").get_to(v.nonpositive);
  j.at("sum_a").get_to(v.sum_a);
  j.at("sum_c").get_to(v.sum_c);
  j.at("b").get_to(v.b);
  j.at("d").get_to(v.d);
  j.at("delta1_threshold").get_to(v.delta1_threshold);
  j.at("delta0_threshold").get_to(v.delta0_threshold);
}

void to_json(json& j, const RateEstimate& v) {
  j = json{{"fit", v.fit}, {"offset_from_target", v.offset_from_target}};
  j["target"] = v.target ? json(*v.target) : json(nullptr);
}

void from_json(const json& j, RateEstimate& v) {
  j.at("fit").get_to(v.fit);
  j.at("offset_from_target").get_to(v.offset_from_target);
  if (j.at("target").is_null()) {
    v.target.reset();
  } else {
    v.target = j.at("target").get<double>();
  }
}

void to_json(json& j, const LimitReport& v) {
  j = json{{"beta", v.beta},
           {"A", v.A},
           {"A_case", to_string(v.a_case)},
           {"a_equation_residual", v.a_equation_residual},
           {"V", v.V},
           {"v_zero_run_limit", v.v_zero_run_limit},
           {"v_one_run_limit", v.v_one_run_limit},
           {"calibration_residual", v.calibration_residual},
           {"selection", v.selection},
           {"rate_estimates", v.rate_estimates}};
  j["A_nonpositive"] = v.A_nonpositive ? json(*v.A_nonpositive) : json(nullptr);
}

void from_json(const json& j, LimitReport& v) {
  j.at("beta").get_to(v.beta);
  j.at("A").get_to(v.A);
  v.a_case = a_case_from_string(j.at("A_case").get<std::string>());
  j.at("a_equation_residual").get_to(v.a_equation_residual);
  j.at("V").get_to(v.V);
  j.at("v_zero_run_limit").get_to(v.v_zero_run_limit);
  j.at("v_one_run_limit").get_to(v.v_one_run_limit);
  j.at("calibration_residual").get_to(v.calibration_residual);
  j.at("selection").get_to(v.selection);
  j.at("rate_estimates").get_to(v.rate_estimates);
  if (j.at("A_nonpositive").is_null()) {
    v.A_nonpositive.reset();
  } else {
    v.A_nonpositive = j.at("A_nonpositive").get<double>();
  }
}

}  // namespace walters
