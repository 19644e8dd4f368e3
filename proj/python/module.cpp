#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "tailcert/certificates.hpp"
#include "tailcert/distributions.hpp"
#include "tailcert/montecarlo.hpp"
#include "tailcert/norms.hpp"
#include "tailcert/order_stats.hpp"
#include "tailcert/special_functions.hpp"

namespace py = pybind11;
using namespace tailcert;

namespace {

XiKind kind_from(const std::string& name) {
  if (name == "xi1") return XiKind::Xi1;
  if (name == "xi2") return XiKind::Xi2;
  throw ConfigError("unknown xi kind '" + name + "'");
}

QuantileModel model_from(const std::string& name, double param) {
  if (name == "standard_normal") return QuantileModel::standard_normal();
  if (name == "symmetric_power_law") {
    return QuantileModel::symmetric_power_law(param);
  }
  if (name == "pareto_tail") return QuantileModel::pareto_tail(param);
  if (name == "u_envelope") return QuantileModel::u_envelope(param);
  if (name == "pure_pareto_h") return QuantileModel::pure_pareto_h(param);
  throw ConfigError("unknown model '" + name + "'");
}

DeviationCertificate cert_from(const std::string& kind, std::vector<double> a,
                               double q, double c_dev, double c_prob) {
  if (kind == "main") {
    return DeviationCertificate::main(std::move(a), q, c_dev, c_prob);
  }
  if (kind == "special_direction") {
    return DeviationCertificate::special_direction_from(std::move(a), q,
                                                        c_dev, c_prob);
  }
  if (kind == "all_directions") {
    return DeviationCertificate::all_directions(std::move(a), q, c_dev,
                                                c_prob);
  }
  throw ConfigError("unknown certificate kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(tailcert, m) {
  m.doc() = "deviation bounds for linear combinations of independent "
            "variables, with Monte Carlo verification";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<NumericalError>(m, "NumericalError");

  m.def(
      "xi",
      [](const std::string& kind, double t) {
        return xi_eval(kind_from(kind), t);
      },
      py::arg("kind"), py::arg("t"));
  m.def(
      "xi_inverse",
      [](const std::string& kind, double y, double tol) {
        return xi_inverse(kind_from(kind), y, tol);
      },
      py::arg("kind"), py::arg("y"), py::arg("tol") = 1e-12);
  m.def(
      "xi_inverse_bound",
      [](const std::string& kind, double y) {
        return xi_inverse_bound(kind_from(kind), y);
      },
      py::arg("kind"), py::arg("y"));
  m.def("c0_constant", &c0_constant, py::arg("grid_points") = 2000,
        py::arg("refine_tol") = 1e-9);

  m.def(
      "orderstat_envelope",
      [](std::size_t n, double t, bool closed_form) {
        EnvelopeParams params;
        params.n = n;
        params.t = t;
        params.closed_form = closed_form;
        const OrderStatEnvelope env = orderstat_envelope(params);
        py::dict out;
        out["top"] = env.top;
        out["bottom"] = env.bottom;
        out["renyi"] = env.renyi;
        out["renyi_linearized"] = env.renyi_linearized;
        out["joint_failure_probability"] = env.joint_failure_probability;
        out["renyi_failure_probability"] = env.renyi_failure_probability;
        return out;
      },
      py::arg("n"), py::arg("t"), py::arg("closed_form") = false);

  m.def(
      "dual_norm",
      [](const std::vector<double>& y, double r, double q, bool restricted) {
        RQParams params;
        params.r = r;
        params.q = q;
        params.n = y.size();
        return dual_norm_rq(y, params, restricted);
      },
      py::arg("y"), py::arg("r"), py::arg("q"), py::arg("restricted") = false);
  m.def(
      "primal_norm",
      [](const std::vector<double>& x, double r, double q,
         const std::string& method) {
        RQParams params;
        params.r = r;
        params.q = q;
        params.n = x.size();
        const PrimalMethod m = method == "lp" ? PrimalMethod::LP
                                              : PrimalMethod::SignFormula;
        return primal_norm_rq(x, params, m);
      },
      py::arg("x"), py::arg("r"), py::arg("q"), py::arg("method") = "sign");

  m.def("lorentz_weight", &lorentz_weight, py::arg("a"), py::arg("q"));
  m.def("gradient_envelope", &gradient_envelope, py::arg("a"), py::arg("q"),
        py::arg("z"));

  m.def(
      "bound",
      [](const std::string& kind, std::vector<double> a, double q, double t,
         double c_dev, double c_prob) {
        return cert_from(kind, std::move(a), q, c_dev, c_prob).bound_at(t);
      },
      py::arg("kind"), py::arg("a"), py::arg("q"), py::arg("t"),
      py::arg("c_dev") = 1.0, py::arg("c_prob") = 1.0);
  m.def(
      "tail_budget",
      [](const std::string& kind, std::vector<double> a, double q, double t,
         double c_dev, double c_prob) {
        return cert_from(kind, std::move(a), q, c_dev, c_prob)
            .tail_probability(t);
      },
      py::arg("kind"), py::arg("a"), py::arg("q"), py::arg("t"),
      py::arg("c_dev") = 1.0, py::arg("c_prob") = 1.0);

  m.def(
      "model_quantile",
      [](const std::string& name, double param, double u) {
        return model_from(name, param).quantile(u);
      },
      py::arg("name"), py::arg("param"), py::arg("u"));

  m.def(
      "simulate_quantiles",
      [](const std::string& model, double param,
         const std::vector<double>& a, std::uint64_t seed,
         std::uint64_t replications, const std::vector<double>& probs) {
        std::vector<QuantileModel> models(a.size(), model_from(model, param));
        SimulationPlan plan;
        plan.seed = seed;
        plan.replications = replications;
        const SimulationSummary summary = simulate_linear_sum(models, a, plan);
        py::dict out;
        out["median"] = summary.median();
        out["digest"] = summary.digest();
        std::vector<double> qs;
        qs.reserve(probs.size());
        for (double u : probs) qs.push_back(summary.quantile(u));
        out["quantiles"] = qs;
        return out;
      },
      py::arg("model"), py::arg("param"), py::arg("a"), py::arg("seed") = 1,
      py::arg("replications") = 100000,
      py::arg("probs") = std::vector<double>{0.5, 0.9, 0.99});
}
