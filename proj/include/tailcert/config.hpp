#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "tailcert/certificates.hpp"
#include "tailcert/distributions.hpp"
#include "tailcert/montecarlo.hpp"

namespace tailcert {

// Throws ConfigError naming the first key of obj not in allowed.
void reject_unknown_keys(const nlohmann::json& obj, const std::string& where,
                         const std::vector<std::string>& allowed);

// {"kind": "symmetric_power_law", "q": 4} and friends; kinds:
// pareto_tail(p), symmetric_power_law(q), u_envelope(q), standard_normal,
// pure_pareto_h(exponent), empirical(sample).
QuantileModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const QuantileModel& model);

// Either an array of n model objects or a single object broadcast n times.
std::vector<QuantileModel> models_from_json(const nlohmann::json& j,
                                            std::size_t n);

// Coefficient generator tags: "unit:n" (n^-1/2 at every coordinate),
// "uniform:n" (all ones), "critical:n" (i^-1/q, q supplied by the caller),
// "e1:n" (first basis vector).
std::vector<double> coefficients_from_tag(const std::string& tag, double q);

// Accepts an explicit JSON array or a generator tag string.
std::vector<double> coefficients_from_json(const nlohmann::json& j, double q);

SimulationPlan plan_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const SimulationPlan& plan);

// {"kind", "q", "c_dev", "c_prob", "a": [...] | tag, "n", "iter_base"};
// "n" may replace "a" for special_direction.
DeviationCertificate certificate_from_json(const nlohmann::json& j);
nlohmann::json certificate_to_json(const DeviationCertificate& cert);

std::vector<double> grid_from_json(const nlohmann::json& j,
                                   const std::string& where);

// Strict parse of a whole config file's text.
nlohmann::json parse_config_text(const std::string& text);

}  // namespace tailcert
