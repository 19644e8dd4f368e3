#include "tailcert/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tailcert {
namespace {

using nlohmann::json;

double number_at(const json& obj, const std::string& where,
                 const std::string& key) {
  if (!obj.contains(key)) {
    throw ConfigError("config: missing key '" + key + "' in " + where);
  }
  if (!obj[key].is_number()) {
    throw ConfigError("config: key '" + key + "' in " + where +
                      " must be a number");
  }
  return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& where,
                 const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ConfigError("config: key '" + key + "' in " + where +
                      " must be a number");
  }
  return obj[key].get<double>();
}

std::string string_at(const json& obj, const std::string& where,
                      const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    throw ConfigError("config: missing string key '" + key + "' in " + where);
  }
  return obj[key].get<std::string>();
}

std::vector<double> number_array(const json& j, const std::string& where) {
  if (!j.is_array()) {
    throw ConfigError("config: expected a numeric array in " + where);
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw ConfigError("config: non-numeric entry in " + where);
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::vector<std::string>& allowed) {
  if (!obj.is_object()) {
    throw ConfigError("config: expected an object for " + where);
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
    }
  }
}

QuantileModel model_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: model must be an object");
  const std::string kind = string_at(j, "model", "kind");
  if (kind == "pareto_tail") {
    reject_unknown_keys(j, "model", {"kind", "p"});
    return QuantileModel::pareto_tail(number_at(j, "model", "p"));
  }
  if (kind == "symmetric_power_law") {
    reject_unknown_keys(j, "model", {"kind", "q"});
    return QuantileModel::symmetric_power_law(number_at(j, "model", "q"));
  }
  if (kind == "u_envelope") {
    reject_unknown_keys(j, "model", {"kind", "q"});
    return QuantileModel::u_envelope(number_at(j, "model", "q"));
  }
  if (kind == "standard_normal") {
    reject_unknown_keys(j, "model", {"kind"});
    return QuantileModel::standard_normal();
  }
  if (kind == "pure_pareto_h") {
    reject_unknown_keys(j, "model", {"kind", "exponent"});
    return QuantileModel::pure_pareto_h(number_at(j, "model", "exponent"));
  }
  if (kind == "empirical") {
    reject_unknown_keys(j, "model", {"kind", "sample"});
    if (!j.contains("sample")) {
      throw ConfigError("config: missing key 'sample' in model");
    }
    return QuantileModel::empirical(number_array(j["sample"], "model.sample"));
  }
  throw ConfigError("config: unknown model kind '" + kind + "'");
}

json model_to_json(const QuantileModel& model) {
  json j;
  switch (model.kind()) {
    case ModelKind::ParetoTail:
      j["kind"] = "pareto_tail";
      j["p"] = model.shape();
      break;
    case ModelKind::SymmetricPowerLaw:
      j["kind"] = "symmetric_power_law";
      j["q"] = model.shape();
      break;
    case ModelKind::UEnvelope:
      j["kind"] = "u_envelope";
      j["q"] = model.shape();
      break;
    case ModelKind::StandardNormal:
      j["kind"] = "standard_normal";
      break;
    case ModelKind::PureParetoH:
      j["kind"] = "pure_pareto_h";
      j["exponent"] = model.shape();
      break;
    case ModelKind::Empirical:
      j["kind"] = "empirical";
      j["sample"] = model.sample();
      break;
  }
  return j;
}

std::vector<QuantileModel> models_from_json(const json& j, std::size_t n) {
  std::vector<QuantileModel> out;
  if (j.is_array()) {
    if (j.size() != n) {
      throw ConfigError("config: 'models' array length must match dimension");
    }
    for (const auto& m : j) out.push_back(model_from_json(m));
    return out;
  }
  const QuantileModel one = model_from_json(j);
  out.assign(n, one);
  return out;
}

std::vector<double> coefficients_from_tag(const std::string& tag, double q) {
  const auto colon = tag.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("config: coefficient tag '" + tag +
                      "' must look like name:n");
  }
  const std::string name = tag.substr(0, colon);
  long n = 0;
  try {
    n = std::stol(tag.substr(colon + 1));
  } catch (...) {
    throw ConfigError("config: bad dimension in coefficient tag '" + tag +
                      "'");
  }
  if (n < 1) {
    throw ConfigError("config: coefficient tag '" + tag +
                      "' needs a positive dimension");
  }
  std::vector<double> a(static_cast<std::size_t>(n), 0.0);
  if (name == "unit") {
    const double v = 1.0 / std::sqrt(static_cast<double>(n));
    std::fill(a.begin(), a.end(), v);
  } else if (name == "uniform") {
    std::fill(a.begin(), a.end(), 1.0);
  } else if (name == "critical") {
    if (!(q > 0.0)) {
      throw ConfigError("config: 'critical' coefficients need q > 0");
    }
    for (long i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(i)] =
          std::pow(static_cast<double>(i + 1), -1.0 / q);
    }
  } else if (name == "e1") {
    a[0] = 1.0;
  } else {
    throw ConfigError("config: unknown coefficient generator '" + name + "'");
  }
  return a;
}

std::vector<double> coefficients_from_json(const json& j, double q) {
  if (j.is_string()) return coefficients_from_tag(j.get<std::string>(), q);
  return number_array(j, "coefficients");
}

SimulationPlan plan_from_json(const json& j) {
  reject_unknown_keys(
      j, "plan",
      {"seed", "replications", "chunk_size", "worker_hint", "max_stored"});
  SimulationPlan plan;
  plan.seed = static_cast<std::uint64_t>(
      number_or(j, "plan", "seed", static_cast<double>(plan.seed)));
  plan.replications = static_cast<std::int64_t>(number_or(
      j, "plan", "replications", static_cast<double>(plan.replications)));
  plan.chunk_size = static_cast<std::int64_t>(number_or(
      j, "plan", "chunk_size", static_cast<double>(plan.chunk_size)));
  plan.worker_hint = static_cast<int>(number_or(
      j, "plan", "worker_hint", static_cast<double>(plan.worker_hint)));
  plan.max_stored = static_cast<std::int64_t>(number_or(
      j, "plan", "max_stored", static_cast<double>(plan.max_stored)));
  return plan;
}

json plan_to_json(const SimulationPlan& plan) {
  json j;
  j["seed"] = plan.seed;
  j["replications"] = plan.replications;
  j["chunk_size"] = plan.chunk_size;
  j["worker_hint"] = plan.worker_hint;
  j["max_stored"] = plan.max_stored;
  return j;
}

DeviationCertificate certificate_from_json(const json& j) {
  reject_unknown_keys(
      j, "certificate",
      {"kind", "q", "c_dev", "c_prob", "a", "n", "iter_base"});
  const std::string kind = string_at(j, "certificate", "kind");
  const double q = number_at(j, "certificate", "q");
  const double c_dev = number_or(j, "certificate", "c_dev", 1.0);
  const double c_prob = number_or(j, "certificate", "c_prob", 1.0);

  if (kind == "special_direction" && !j.contains("a")) {
    const double n = number_at(j, "certificate", "n");
    if (!(n >= 1.0)) {
      throw ConfigError("config: certificate 'n' must be at least 1");
    }
    return DeviationCertificate::special_direction(
        static_cast<std::size_t>(n), q, c_dev, c_prob);
  }
  if (!j.contains("a")) {
    throw ConfigError("config: missing key 'a' in certificate");
  }
  std::vector<double> a = coefficients_from_json(j["a"], q);
  if (kind == "main") {
    return DeviationCertificate::main(std::move(a), q, c_dev, c_prob);
  }
  if (kind == "special_direction") {
    return DeviationCertificate::special_direction_from(std::move(a), q,
                                                        c_dev, c_prob);
  }
  if (kind == "all_directions") {
    const double iter_base = number_or(j, "certificate", "iter_base", 2.0);
    return DeviationCertificate::all_directions(std::move(a), q, c_dev,
                                                c_prob, iter_base);
  }
  throw ConfigError("config: unknown certificate kind '" + kind + "'");
}

json certificate_to_json(const DeviationCertificate& cert) {
  json j;
  switch (cert.kind()) {
    case CertificateKind::Main:
      j["kind"] = "main";
      break;
    case CertificateKind::SpecialDirection:
      j["kind"] = "special_direction";
      break;
    case CertificateKind::AllDirections:
      j["kind"] = "all_directions";
      j["iter_base"] = cert.iter_base();
      break;
  }
  j["q"] = cert.q();
  j["n"] = cert.dimension();
  j["c_dev"] = cert.c_dev();
  j["c_prob"] = cert.c_prob();
  j["a"] = cert.coefficients();
  return j;
}

std::vector<double> grid_from_json(const json& j, const std::string& where) {
  std::vector<double> grid = number_array(j, where);
  if (grid.empty()) throw ConfigError("config: empty grid in " + where);
  return grid;
}

json parse_config_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
}

}  // namespace tailcert
