#include "tailcert/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tailcert/baselines.hpp"
#include "tailcert/certificates.hpp"
#include "tailcert/config.hpp"
#include "tailcert/montecarlo.hpp"
#include "tailcert/norms.hpp"
#include "tailcert/order_stats.hpp"
#include "tailcert/report.hpp"
#include "tailcert/special_functions.hpp"

namespace tailcert {
namespace {

using nlohmann::json;

struct OutputOptions {
  std::string out_path;
  bool as_json = false;
};

void emit(const Table& table, const OutputOptions& out) {
  const std::string text = out.as_json ? to_json_text(table) : to_csv(table);
  if (out.out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out.out_path, text);
  }
}

std::vector<double> parse_number_list(const std::string& text) {
  if (!text.empty() && text.front() == '[') {
    const json j = parse_config_text(text);
    return grid_from_json(j, "list");
  }
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end != item.c_str() + item.size()) {
      throw ConfigError("cannot parse number '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

bool looks_like_tag(const std::string& text) {
  if (text.empty() || text.front() == '[') return false;
  const auto colon = text.find(':');
  if (colon == std::string::npos) return false;
  return !std::isdigit(static_cast<unsigned char>(text.front()));
}

std::vector<double> parse_vector_arg(const std::string& text, double q) {
  if (looks_like_tag(text)) return coefficients_from_tag(text, q);
  return parse_number_list(text);
}

QuantileModel model_from_arg(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    return model_from_json(parse_config_text(text));
  }
  const auto colon = text.find(':');
  const std::string name =
      colon == std::string::npos ? text : text.substr(0, colon);
  double param = 0.0;
  if (colon != std::string::npos) {
    const std::string rest = text.substr(colon + 1);
    char* end = nullptr;
    param = std::strtod(rest.c_str(), &end);
    if (rest.empty() || end != rest.c_str() + rest.size()) {
      throw ConfigError("bad model parameter in '" + text + "'");
    }
  } else if (name != "normal" && name != "standard_normal") {
    throw ConfigError("model '" + text + "' needs a parameter, kind:value");
  }
  if (name == "normal" || name == "standard_normal") {
    return QuantileModel::standard_normal();
  }
  if (name == "spl" || name == "symmetric_power_law") {
    return QuantileModel::symmetric_power_law(param);
  }
  if (name == "pareto" || name == "pareto_tail") {
    return QuantileModel::pareto_tail(param);
  }
  if (name == "uenv" || name == "u_envelope") {
    return QuantileModel::u_envelope(param);
  }
  if (name == "pph" || name == "pure_pareto_h") {
    return QuantileModel::pure_pareto_h(param);
  }
  throw ConfigError("unknown model '" + text + "'");
}

double json_number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) {
    throw ConfigError("config: key '" + key + "' must be a number");
  }
  return j[key].get<double>();
}

struct RunSpec {
  std::vector<QuantileModel> models;
  std::vector<double> a;
  std::optional<DeviationCertificate> cert;
  SimulationPlan plan;
  std::vector<double> t_grid;
  double c_prob_target = 3.0;
  OutputOptions out;
};

RunSpec load_run_spec(const json& j, bool needs_cert, bool needs_grid,
                      bool needs_target) {
  reject_unknown_keys(j, "config",
                      {"certificate", "models", "coefficients", "q", "plan",
                       "t_grid", "c_prob_target", "out", "json"});
  RunSpec spec;
  double q = json_number_or(j, "q", 0.0);
  if (needs_cert) {
    if (!j.contains("certificate")) {
      throw ConfigError("config: missing key 'certificate'");
    }
    spec.cert = certificate_from_json(j["certificate"]);
    spec.a = spec.cert->coefficients();
    q = spec.cert->q();
  } else {
    if (!j.contains("coefficients")) {
      throw ConfigError("config: missing key 'coefficients'");
    }
    spec.a = coefficients_from_json(j["coefficients"], q);
  }
  if (!j.contains("models")) throw ConfigError("config: missing key 'models'");
  spec.models = models_from_json(j["models"], spec.a.size());
  if (j.contains("plan")) spec.plan = plan_from_json(j["plan"]);
  if (needs_grid) {
    if (!j.contains("t_grid")) {
      throw ConfigError("config: missing key 't_grid'");
    }
    spec.t_grid = grid_from_json(j["t_grid"], "t_grid");
  }
  if (needs_target) {
    spec.c_prob_target = json_number_or(j, "c_prob_target", 3.0);
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) {
      throw ConfigError("config: key 'out' must be a string");
    }
    spec.out.out_path = j["out"].get<std::string>();
  }
  if (j.contains("json")) {
    if (!j["json"].is_boolean()) {
      throw ConfigError("config: key 'json' must be a boolean");
    }
    spec.out.as_json = j["json"].get<bool>();
  }
  return spec;
}

Cell num(double v) { return Cell(v); }
Cell text(const std::string& s) { return Cell(s); }

Table verification_table(const VerificationReport& report) {
  Table t;
  t.columns = {"t",     "threshold", "successes", "trials", "p_hat",
               "ci_low", "ci_high",  "budget",    "pass"};
  for (const auto& row : report.rows) {
    t.add_row({num(row.t), num(row.threshold),
               num(static_cast<double>(row.estimate.successes)),
               num(static_cast<double>(row.estimate.trials)),
               num(row.estimate.p_hat), num(row.estimate.ci_low),
               num(row.estimate.ci_high), num(row.budget), Cell(row.pass)});
  }
  return t;
}

Table calibration_table(const CalibrationResult& result) {
  Table t;
  t.columns = {"c_dev",  "feasible", "t",       "threshold", "successes",
               "trials", "p_hat",    "ci_low",  "ci_high",   "budget",
               "pass"};
  for (const auto& point : result.grid) {
    const double budget =
        result.c_prob * std::exp(-0.5 * point.t * point.t);
    t.add_row({num(result.c_dev), Cell(result.feasible), num(point.t),
               num(point.threshold),
               num(static_cast<double>(point.estimate.successes)),
               num(static_cast<double>(point.estimate.trials)),
               num(point.estimate.p_hat), num(point.estimate.ci_low),
               num(point.estimate.ci_high), num(budget),
               Cell(point.estimate.ci_high <= budget)});
  }
  return t;
}

int cmd_xi(const std::string& kind_name, std::optional<double> t_val,
           std::optional<double> invert_val, std::optional<double> bound_val,
           double tol, const OutputOptions& out) {
  const XiKind kind = kind_name == "xi1" ? XiKind::Xi1 : XiKind::Xi2;
  Table table;
  table.columns = {"kind", "operation", "input", "value"};
  if (t_val) {
    table.add_row({text(kind_name), text("eval"), num(*t_val),
                   num(xi_eval(kind, *t_val))});
  }
  if (invert_val) {
    table.add_row({text(kind_name), text("inverse"), num(*invert_val),
                   num(xi_inverse(kind, *invert_val, tol))});
  }
  if (bound_val) {
    table.add_row({text(kind_name), text("inverse_bound"), num(*bound_val),
                   num(xi_inverse_bound(kind, *bound_val))});
  }
  if (table.rows.empty()) {
    throw ConfigError("xi: provide at least one of --t, --invert, --bound");
  }
  emit(table, out);
  return 0;
}

int cmd_c0(double tol, int grid, const OutputOptions& out) {
  const C0Scan scan = c0_scan(grid, tol);
  Table table;
  table.columns = {"grid_points", "tol", "value", "argmax"};
  table.add_row({num(static_cast<double>(grid)), num(tol), num(scan.value),
                 num(scan.argmax)});
  emit(table, out);
  return 0;
}

int cmd_orderstats(long n, double t, double renyi_C, double renyi_c,
                   bool closed_form, const OutputOptions& out) {
  EnvelopeParams params;
  if (n < 1) throw ConfigError("orderstats: need --n >= 1");
  params.n = static_cast<std::size_t>(n);
  params.t = t;
  params.renyi_C = renyi_C;
  params.renyi_c = renyi_c;
  params.closed_form = closed_form;
  const OrderStatEnvelope env = orderstat_envelope(params);

  Table table;
  table.columns = {"k",
                   "top",
                   "bottom",
                   "renyi",
                   "renyi_linearized",
                   "joint_failure_probability",
                   "renyi_failure_probability"};
  for (std::size_t k = 0; k < env.top.size(); ++k) {
    table.add_row({num(static_cast<double>(k + 1)), num(env.top[k]),
                   num(env.bottom[k]), num(env.renyi[k]),
                   num(env.renyi_linearized[k]),
                   num(env.joint_failure_probability),
                   num(env.renyi_failure_probability)});
  }
  emit(table, out);
  return 0;
}

int cmd_trimmed(const std::string& model_text, const std::string& variant_name,
                long n, long j, long k, double lambda, double p, double T,
                double C, const OutputOptions& out) {
  const QuantileModel model = model_from_arg(model_text);
  if (n < 1 || j < 0 || k < 0) {
    throw ConfigError("trimmed: need --n >= 1 and nonnegative --j, --k");
  }
  Table table;
  table.columns = {"variant", "n", "j", "k", "lambda", "quantity", "value"};
  auto push = [&](const std::string& quantity, double value) {
    table.add_row({text(variant_name), num(static_cast<double>(n)),
                   num(static_cast<double>(j)), num(static_cast<double>(k)),
                   num(lambda), text(quantity), num(value)});
  };

  if (variant_name == "glptj") {
    const GlptjComparison cmp = glptj_comparison(
        model, static_cast<std::size_t>(n), static_cast<std::size_t>(k),
        lambda);
    push("threshold", cmp.threshold);
    push("probability", cmp.probability);
    push("s", cmp.s);
  } else {
    TrimmedBoundVariant variant;
    if (variant_name == "quadrature") {
      variant = TrimmedBoundVariant::quadrature();
    } else if (variant_name == "replacio") {
      variant = TrimmedBoundVariant::replacio();
    } else if (variant_name == "productiones") {
      variant = TrimmedBoundVariant::productiones(p, T);
    } else {
      variant = TrimmedBoundVariant::pareto_closed(C);
    }
    push("bound",
         trimmed_sum_bound(model, static_cast<std::size_t>(n),
                           static_cast<std::size_t>(j),
                           static_cast<std::size_t>(k), lambda, variant));
  }
  emit(table, out);
  return 0;
}

int cmd_norm(const std::string& family, double r, double q,
             const std::string& y_text, double delta,
             const std::string& weights_text, const std::string& model_text,
             bool analytic, long source_reps, long mc_reps,
             std::uint64_t seed, const OutputOptions& out) {
  Table table;
  table.columns = {"family", "quantity", "value"};
  auto push = [&](const std::string& quantity, double value) {
    table.add_row({text(family), text(quantity), num(value)});
  };

  if (family == "dual" || family == "dual_restricted" ||
      family == "primal_sign" || family == "primal_lp") {
    if (y_text.empty()) throw ConfigError("norm: missing --y vector");
    const std::vector<double> y = parse_vector_arg(y_text, q);
    RQParams params;
    params.r = r;
    params.q = q;
    params.n = y.size();
    double value = 0.0;
    if (family == "dual") {
      value = dual_norm_rq(y, params, false);
    } else if (family == "dual_restricted") {
      value = dual_norm_rq(y, params, true);
    } else if (family == "primal_sign") {
      value = primal_norm_rq(y, params, PrimalMethod::SignFormula);
    } else {
      value = primal_norm_rq(y, params, PrimalMethod::LP);
    }
    push("norm", value);
    emit(table, out);
    return 0;
  }

  if (family == "poisson_quadrature" || family == "poisson_direct" ||
      family == "poisson_compare") {
    if (weights_text.empty()) throw ConfigError("norm: missing --weights");
    PoissonNormParams params;
    params.delta = delta;
    params.weights = parse_vector_arg(weights_text, q);
    params.model = model_from_arg(model_text);
    params.source.kind = analytic ? QuantileSource::Kind::Analytic
                                  : QuantileSource::Kind::MonteCarlo;
    params.source.replications = static_cast<std::uint64_t>(source_reps);
    params.source.seed = seed;
    if (family == "poisson_compare") {
      const NormComparisonReport report = norm_quantile_comparison(
          params, static_cast<std::uint64_t>(mc_reps), seed + 1);
      push("norm", report.norm_value);
      push("ratio_R", report.ratio_R);
      push("p_upper_hat", report.p_upper.p_hat);
      push("p_upper_ci_high", report.p_upper.ci_high);
      push("upper_bound", report.upper_bound);
      push("p_lower_hat", report.p_lower.p_hat);
      push("p_lower_ci_low", report.p_lower.ci_low);
      push("lower_bound", report.lower_bound);
      emit(table, out);
      return 0;
    }
    PoissonMethod method;
    method.kind = family == "poisson_quadrature"
                      ? PoissonMethod::Kind::Quadrature
                      : PoissonMethod::Kind::DirectMC;
    method.replications = static_cast<std::uint64_t>(mc_reps);
    method.seed = seed + 1;
    push("norm", poisson_hull_norm(params, method));
    emit(table, out);
    return 0;
  }

  throw ConfigError("norm: unknown family '" + family + "'");
}

DeviationCertificate build_certificate(const std::string& kind, double q,
                                       const std::string& coeff_text, long n,
                                       double c_dev, double c_prob,
                                       double iter_base) {
  if (kind == "special_direction" && coeff_text.empty()) {
    if (n < 1) {
      throw ConfigError("certificate: provide --coeff or --n");
    }
    return DeviationCertificate::special_direction(
        static_cast<std::size_t>(n), q, c_dev, c_prob);
  }
  if (coeff_text.empty()) {
    throw ConfigError("certificate: provide --coeff");
  }
  std::vector<double> a = parse_vector_arg(coeff_text, q);
  if (kind == "main") {
    return DeviationCertificate::main(std::move(a), q, c_dev, c_prob);
  }
  if (kind == "special_direction") {
    return DeviationCertificate::special_direction_from(std::move(a), q,
                                                        c_dev, c_prob);
  }
  return DeviationCertificate::all_directions(std::move(a), q, c_dev, c_prob,
                                              iter_base);
}

int cmd_bound(const std::string& kind, double q, const std::string& coeff_text,
              long n, const std::string& t_text, double c_dev, double c_prob,
              double iter_base, const OutputOptions& out) {
  const DeviationCertificate cert =
      build_certificate(kind, q, coeff_text, n, c_dev, c_prob, iter_base);
  const std::vector<double> ts = parse_number_list(t_text);
  Table table;
  table.columns = {"kind", "q", "n", "t", "bound", "tail_probability"};
  for (double t : ts) {
    table.add_row({text(kind), num(q),
                   num(static_cast<double>(cert.dimension())), num(t),
                   num(cert.bound_at(t)), num(cert.tail_probability(t))});
  }
  emit(table, out);
  return 0;
}

void apply_plan_overrides(SimulationPlan& plan,
                          const std::optional<std::uint64_t>& seed,
                          const std::optional<long>& reps,
                          const std::optional<long>& chunk,
                          const std::optional<int>& threads) {
  if (seed) plan.seed = *seed;
  if (reps) plan.replications = *reps;
  if (chunk) plan.chunk_size = *chunk;
  if (threads) plan.worker_hint = *threads;
}

int cmd_simulate(const std::string& config_path, const std::string& model_text,
                 const std::string& coeff_text, double q,
                 std::optional<std::uint64_t> seed, std::optional<long> reps,
                 std::optional<long> chunk, std::optional<int> threads,
                 OutputOptions out, bool out_given, bool json_given) {
  RunSpec spec;
  if (!config_path.empty()) {
    const json j = parse_config_text(read_text_file(config_path));
    spec = load_run_spec(j, false, false, false);
  } else {
    if (model_text.empty() || coeff_text.empty()) {
      throw ConfigError("simulate: provide --config or --model with --coeff");
    }
    spec.a = parse_vector_arg(coeff_text, q);
    spec.models.assign(spec.a.size(), model_from_arg(model_text));
  }
  apply_plan_overrides(spec.plan, seed, reps, chunk, threads);
  if (out_given) spec.out.out_path = out.out_path;
  if (json_given) spec.out.as_json = out.as_json;

  const SimulationSummary summary =
      simulate_linear_sum(spec.models, spec.a, spec.plan);

  Table table;
  table.columns = {"quantity", "value"};
  auto push = [&](const std::string& name, double v) {
    table.add_row({text(name), num(v)});
  };
  push("replications", static_cast<double>(summary.replications()));
  push("stride", static_cast<double>(summary.stride()));
  push("median", summary.median());
  push("pilot_median", summary.pilot_median());
  for (double u : {0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999}) {
    char name[32];
    std::snprintf(name, sizeof(name), "quantile_%g", u);
    push(name, summary.quantile(u));
  }
  char digest[32];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(summary.digest()));
  table.add_row({text("digest"), text(digest)});
  emit(table, spec.out);
  return 0;
}

int cmd_calibrate(const std::string& config_path,
                  std::optional<std::uint64_t> seed, std::optional<long> reps,
                  std::optional<long> chunk, std::optional<int> threads,
                  std::optional<double> target, OutputOptions out,
                  bool out_given, bool json_given) {
  if (config_path.empty()) {
    throw ConfigError("calibrate: provide --config");
  }
  const json j = parse_config_text(read_text_file(config_path));
  RunSpec spec = load_run_spec(j, true, true, true);
  apply_plan_overrides(spec.plan, seed, reps, chunk, threads);
  if (target) spec.c_prob_target = *target;
  if (out_given) spec.out.out_path = out.out_path;
  if (json_given) spec.out.as_json = out.as_json;

  const CalibrationResult result = calibrate(
      *spec.cert, spec.models, spec.plan, spec.t_grid, spec.c_prob_target);
  emit(calibration_table(result), spec.out);
  return result.feasible ? 0 : 1;
}

int cmd_verify(const std::string& config_path,
               std::optional<std::uint64_t> seed, std::optional<long> reps,
               std::optional<long> chunk, std::optional<int> threads,
               std::optional<double> c_dev, std::optional<double> c_prob,
               OutputOptions out, bool out_given, bool json_given) {
  if (config_path.empty()) {
    throw ConfigError("verify: provide --config");
  }
  const json j = parse_config_text(read_text_file(config_path));
  RunSpec spec = load_run_spec(j, true, true, false);
  apply_plan_overrides(spec.plan, seed, reps, chunk, threads);
  DeviationCertificate cert = *spec.cert;
  if (c_dev || c_prob) {
    cert = cert.with_constants(c_dev ? *c_dev : cert.c_dev(),
                               c_prob ? *c_prob : cert.c_prob());
  }
  if (out_given) spec.out.out_path = out.out_path;
  if (json_given) spec.out.as_json = out.as_json;

  const VerificationReport report =
      verify_certificate(cert, spec.models, spec.plan, spec.t_grid);
  emit(verification_table(report), spec.out);
  return report.all_pass ? 0 : 1;
}

int cmd_compare(const std::string& model_text, double q, double c_dev,
                double c_prob, double be_r, double be_Cr, long be_n,
                double bcr_C, const std::string& t_text,
                const OutputOptions& out) {
  const QuantileModel model = model_from_arg(model_text);
  const DeviationCertificate cert =
      DeviationCertificate::main({1.0}, q, c_dev, c_prob);
  const std::vector<double> ts = parse_number_list(t_text);

  const double median = model.quantile(0.5);
  const MomentTable moments = make_moment_table(model);
  const double m3 = moment(model, 3.0);
  const double mr = moment(model, be_r);
  if (!std::isfinite(m3) || !std::isfinite(mr)) {
    throw ConfigError(
        "compare: the model lacks the moments the comparison needs");
  }

  Table table;
  table.columns = {"t",
                   "tail",
                   "markov",
                   "berry_esseen",
                   "bcr_deviation",
                   "bcr_probability",
                   "certificate_bound",
                   "certificate_probability"};
  for (double t : ts) {
    const double b = cert.bound_at(t);
    const double tail = (1.0 - model.cdf(median + b)) + model.cdf(median - b);
    const double markov = b > 1.0 ? markov_envelope(moments, b) : 1.0;
    const double be = berry_esseen_nonuniform(be_r, static_cast<double>(be_n),
                                              b, m3, mr, be_Cr);
    const TailPoint bcr =
        bcr_bound(q / 2.0, static_cast<double>(be_n), t, bcr_C);
    table.add_row({num(t), num(tail), num(std::min(markov, 1.0)),
                   num(std::min(be, 1.0)), num(bcr.deviation),
                   num(bcr.probability), num(b),
                   num(cert.tail_probability(t))});
  }
  emit(table, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"deviation bounds, order statistic envelopes, and their "
               "Monte Carlo verification"};
  app.require_subcommand(1);

  OutputOptions out;

  // Shared output flags live on every subcommand so they can appear after the
  // subcommand name, which is how people actually type them.
  auto add_output_flags = [&out](CLI::App* sub) {
    sub->add_option("--out", out.out_path, "write the table to this file");
    sub->add_flag("--json", out.as_json, "emit JSON instead of CSV");
  };

  int exit_code = 0;
  auto wrap = [&exit_code](std::function<int()> body) {
    return [&exit_code, body]() { exit_code = body(); };
  };

  // xi
  auto* xi = app.add_subcommand("xi", "evaluate the tilt maps and inverses");
  auto xi_kind = std::make_shared<std::string>("xi1");
  auto xi_t = std::make_shared<std::optional<double>>();
  auto xi_inv = std::make_shared<std::optional<double>>();
  auto xi_bound = std::make_shared<std::optional<double>>();
  auto xi_tol = std::make_shared<double>(1e-12);
  xi->add_option("--kind", *xi_kind)
      ->check(CLI::IsMember({"xi1", "xi2"}));
  xi->add_option("--t", *xi_t, "evaluate at this point");
  xi->add_option("--invert", *xi_inv, "invert at this value");
  xi->add_option("--bound", *xi_bound, "closed form inverse bound");
  xi->add_option("--tol", *xi_tol);
  add_output_flags(xi);
  xi->callback(wrap([=, &out]() {
    return cmd_xi(*xi_kind, *xi_t, *xi_inv, *xi_bound, *xi_tol, out);
  }));

  // c0
  auto* c0 = app.add_subcommand("c0", "scan for the envelope constant");
  auto c0_tol = std::make_shared<double>(1e-9);
  auto c0_grid = std::make_shared<int>(2000);
  c0->add_option("--tol", *c0_tol);
  c0->add_option("--grid", *c0_grid)->check(CLI::PositiveNumber);
  add_output_flags(c0);
  c0->callback(wrap([=, &out]() { return cmd_c0(*c0_tol, *c0_grid, out); }));

  // orderstats
  auto* os = app.add_subcommand(
      "orderstats", "uniform order statistic envelopes at a deviation level");
  auto os_n = std::make_shared<long>(0);
  auto os_t = std::make_shared<double>(3.0);
  auto os_C = std::make_shared<double>(4.0);
  auto os_c = std::make_shared<double>(0.125);
  auto os_closed = std::make_shared<bool>(false);
  os->add_option("--n", *os_n)->required();
  os->add_option("--t", *os_t);
  os->add_option("--renyi-C", *os_C);
  os->add_option("--renyi-c", *os_c);
  os->add_flag("--closed-form", *os_closed,
               "use the closed form inverse bounds");
  add_output_flags(os);
  os->callback(wrap([=, &out]() {
    return cmd_orderstats(*os_n, *os_t, *os_C, *os_c, *os_closed, out);
  }));

  // trimmed
  auto* tr = app.add_subcommand("trimmed",
                                "upper bounds for trimmed sums of order "
                                "statistics");
  auto tr_model = std::make_shared<std::string>("normal");
  auto tr_variant = std::make_shared<std::string>("quadrature");
  auto tr_n = std::make_shared<long>(0);
  auto tr_j = std::make_shared<long>(0);
  auto tr_k = std::make_shared<long>(0);
  auto tr_lambda = std::make_shared<double>(3.0);
  auto tr_p = std::make_shared<double>(3.0);
  auto tr_T = std::make_shared<double>(1.0);
  auto tr_C = std::make_shared<double>(1.0);
  tr->add_option("--model", *tr_model);
  tr->add_option("--variant", *tr_variant)
      ->check(CLI::IsMember({"quadrature", "replacio", "productiones",
                             "pareto_closed", "glptj"}));
  tr->add_option("--n", *tr_n)->required();
  tr->add_option("--j", *tr_j);
  tr->add_option("--k", *tr_k);
  tr->add_option("--lambda", *tr_lambda);
  tr->add_option("--p", *tr_p);
  tr->add_option("--T", *tr_T);
  tr->add_option("--C", *tr_C);
  add_output_flags(tr);
  tr->callback(wrap([=, &out]() {
    return cmd_trimmed(*tr_model, *tr_variant, *tr_n, *tr_j, *tr_k,
                       *tr_lambda, *tr_p, *tr_T, *tr_C, out);
  }));

  // norm
  auto* nm = app.add_subcommand("norm",
                                "interpolation norms and the smoothed "
                                "rearrangement norm");
  auto nm_family = std::make_shared<std::string>("dual");
  auto nm_r = std::make_shared<double>(1.0);
  auto nm_q = std::make_shared<double>(2.0);
  auto nm_y = std::make_shared<std::string>();
  auto nm_delta = std::make_shared<double>(0.1);
  auto nm_weights = std::make_shared<std::string>();
  auto nm_model = std::make_shared<std::string>("normal");
  auto nm_analytic = std::make_shared<bool>(false);
  auto nm_source_reps = std::make_shared<long>(100000);
  auto nm_mc_reps = std::make_shared<long>(100000);
  auto nm_seed = std::make_shared<std::uint64_t>(1);
  nm->add_option("--family", *nm_family)
      ->check(CLI::IsMember({"dual", "dual_restricted", "primal_sign",
                             "primal_lp", "poisson_quadrature",
                             "poisson_direct", "poisson_compare"}));
  nm->add_option("--r", *nm_r);
  nm->add_option("--q", *nm_q);
  nm->add_option("--y", *nm_y, "vector, JSON array or tag like unit:8");
  nm->add_option("--delta", *nm_delta);
  nm->add_option("--weights", *nm_weights);
  nm->add_option("--model", *nm_model);
  nm->add_flag("--analytic", *nm_analytic,
               "use the analytic quantile instead of a sampled one");
  nm->add_option("--source-replications", *nm_source_reps);
  nm->add_option("--replications", *nm_mc_reps);
  nm->add_option("--seed", *nm_seed);
  add_output_flags(nm);
  nm->callback(wrap([=, &out]() {
    return cmd_norm(*nm_family, *nm_r, *nm_q, *nm_y, *nm_delta, *nm_weights,
                    *nm_model, *nm_analytic, *nm_source_reps, *nm_mc_reps,
                    *nm_seed, out);
  }));

  // bound
  auto* bd = app.add_subcommand("bound", "deviation bound certificates");
  auto bd_kind = std::make_shared<std::string>("main");
  auto bd_q = std::make_shared<double>(4.0);
  auto bd_coeff = std::make_shared<std::string>();
  auto bd_n = std::make_shared<long>(0);
  auto bd_t = std::make_shared<std::string>("2");
  auto bd_cdev = std::make_shared<double>(1.0);
  auto bd_cprob = std::make_shared<double>(1.0);
  auto bd_iter = std::make_shared<double>(2.0);
  bd->add_option("--kind", *bd_kind)
      ->check(CLI::IsMember({"main", "special_direction", "all_directions"}));
  bd->add_option("--q", *bd_q);
  bd->add_option("--coeff", *bd_coeff,
                 "coefficients, JSON array or tag like unit:4");
  bd->add_option("--n", *bd_n, "dimension when --coeff is omitted");
  bd->add_option("--t", *bd_t, "deviation levels, comma separated");
  bd->add_option("--cdev", *bd_cdev);
  bd->add_option("--cprob", *bd_cprob);
  bd->add_option("--iter-base", *bd_iter);
  add_output_flags(bd);
  bd->callback(wrap([=, &out]() {
    return cmd_bound(*bd_kind, *bd_q, *bd_coeff, *bd_n, *bd_t, *bd_cdev,
                     *bd_cprob, *bd_iter, out);
  }));

  // simulate
  auto* sim = app.add_subcommand("simulate",
                                 "sample the linear sum and report quantiles");
  auto sim_config = std::make_shared<std::string>();
  auto sim_model = std::make_shared<std::string>();
  auto sim_coeff = std::make_shared<std::string>();
  auto sim_q = std::make_shared<double>(4.0);
  auto sim_seed = std::make_shared<std::optional<std::uint64_t>>();
  auto sim_reps = std::make_shared<std::optional<long>>();
  auto sim_chunk = std::make_shared<std::optional<long>>();
  auto sim_threads = std::make_shared<std::optional<int>>();
  sim->add_option("--config", *sim_config, "JSON run description");
  sim->add_option("--model", *sim_model);
  sim->add_option("--coeff", *sim_coeff);
  sim->add_option("--q", *sim_q, "exponent used by coefficient tags");
  sim->add_option("--seed", *sim_seed);
  sim->add_option("--replications", *sim_reps);
  sim->add_option("--chunk-size", *sim_chunk);
  sim->add_option("--threads", *sim_threads);
  add_output_flags(sim);
  auto* sim_out_opt = sim->get_option("--out");
  auto* sim_json_opt = sim->get_option("--json");
  sim->callback(wrap([=, &out]() {
    return cmd_simulate(*sim_config, *sim_model, *sim_coeff, *sim_q,
                        *sim_seed, *sim_reps, *sim_chunk, *sim_threads, out,
                        sim_out_opt->count() > 0, sim_json_opt->count() > 0);
  }));

  // calibrate
  auto* cal = app.add_subcommand(
      "calibrate", "find the smallest deviation constant the data supports");
  auto cal_config = std::make_shared<std::string>();
  auto cal_seed = std::make_shared<std::optional<std::uint64_t>>();
  auto cal_reps = std::make_shared<std::optional<long>>();
  auto cal_chunk = std::make_shared<std::optional<long>>();
  auto cal_threads = std::make_shared<std::optional<int>>();
  auto cal_target = std::make_shared<std::optional<double>>();
  cal->add_option("--config", *cal_config, "JSON run description")
      ->required();
  cal->add_option("--seed", *cal_seed);
  cal->add_option("--replications", *cal_reps);
  cal->add_option("--chunk-size", *cal_chunk);
  cal->add_option("--threads", *cal_threads);
  cal->add_option("--target", *cal_target, "probability constant to respect");
  add_output_flags(cal);
  auto* cal_out_opt = cal->get_option("--out");
  auto* cal_json_opt = cal->get_option("--json");
  cal->callback(wrap([=, &out]() {
    return cmd_calibrate(*cal_config, *cal_seed, *cal_reps, *cal_chunk,
                         *cal_threads, *cal_target, out,
                         cal_out_opt->count() > 0, cal_json_opt->count() > 0);
  }));

  // verify
  auto* ver = app.add_subcommand("verify",
                                 "check a certificate against fresh samples");
  auto ver_config = std::make_shared<std::string>();
  auto ver_seed = std::make_shared<std::optional<std::uint64_t>>();
  auto ver_reps = std::make_shared<std::optional<long>>();
  auto ver_chunk = std::make_shared<std::optional<long>>();
  auto ver_threads = std::make_shared<std::optional<int>>();
  auto ver_cdev = std::make_shared<std::optional<double>>();
  auto ver_cprob = std::make_shared<std::optional<double>>();
  ver->add_option("--config", *ver_config, "JSON run description")
      ->required();
  ver->add_option("--seed", *ver_seed);
  ver->add_option("--replications", *ver_reps);
  ver->add_option("--chunk-size", *ver_chunk);
  ver->add_option("--threads", *ver_threads);
  ver->add_option("--cdev", *ver_cdev, "override the deviation constant");
  ver->add_option("--cprob", *ver_cprob, "override the probability constant");
  add_output_flags(ver);
  auto* ver_out_opt = ver->get_option("--out");
  auto* ver_json_opt = ver->get_option("--json");
  ver->callback(wrap([=, &out]() {
    return cmd_verify(*ver_config, *ver_seed, *ver_reps, *ver_chunk,
                      *ver_threads, *ver_cdev, *ver_cprob, out,
                      ver_out_opt->count() > 0, ver_json_opt->count() > 0);
  }));

  // compare
  auto* cmp = app.add_subcommand(
      "compare", "put the certificate next to classical tail bounds");
  auto cmp_model = std::make_shared<std::string>("normal");
  auto cmp_q = std::make_shared<double>(4.0);
  auto cmp_cdev = std::make_shared<double>(1.0);
  auto cmp_cprob = std::make_shared<double>(1.0);
  auto cmp_r = std::make_shared<double>(3.0);
  auto cmp_Cr = std::make_shared<double>(1.0);
  auto cmp_n = std::make_shared<long>(1);
  auto cmp_C = std::make_shared<double>(1.0);
  auto cmp_t = std::make_shared<std::string>("3,4,5");
  cmp->add_option("--model", *cmp_model);
  cmp->add_option("--q", *cmp_q);
  cmp->add_option("--cdev", *cmp_cdev);
  cmp->add_option("--cprob", *cmp_cprob);
  cmp->add_option("--r", *cmp_r, "moment order for the polynomial bound");
  cmp->add_option("--Cr", *cmp_Cr);
  cmp->add_option("--be-n", *cmp_n);
  cmp->add_option("--C", *cmp_C);
  cmp->add_option("--tgrid", *cmp_t,
                  "deviation levels above e, comma separated");
  add_output_flags(cmp);
  cmp->callback(wrap([=, &out]() {
    return cmd_compare(*cmp_model, *cmp_q, *cmp_cdev, *cmp_cprob, *cmp_r,
                       *cmp_Cr, *cmp_n, *cmp_C, *cmp_t, out);
  }));

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("tailcert");
  for (const auto& a : args) argv_storage.push_back(a);
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace tailcert
