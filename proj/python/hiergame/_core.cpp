#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "hiergame/binomial.hpp"
#include "hiergame/experiments.hpp"
#include "hiergame/hierarchy.hpp"
#include "hiergame/payoffs.hpp"
#include "hiergame/simulator.hpp"

namespace py = pybind11;
using namespace hiergame;

namespace {

ModelVariant variant_of(const std::string& name) { return parse_variant(name); }

py::dict coefficient_dict(const PayoffCoefficients& c) {
  py::dict d;
  d["a"] = c.a;
  d["b"] = c.bcoef;
  return d;
}

py::dict estimate_dict(const sim::CoefficientEstimate& c) {
  py::dict d;
  d["a"] = c.a_hat;
  d["b"] = c.b_hat;
  d["a_se"] = c.a_se;
  d["b_se"] = c.b_se;
  d["ab_cov"] = c.ab_cov;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hierarchy measures, analytic payoffs and Monte Carlo simulation";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("variants", [] {
    py::list out;
    for (ModelVariant v : kAllVariants) out.append(std::string(to_string(v)));
    return out;
  });

  m.def("h_nx", py::overload_cast<int, int>(&h_nx), py::arg("n"), py::arg("x"));
  m.def(
      "grc",
      [](std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
        DirectedGraph g(nodes);
        for (const auto& [u, v] : edges) g.add_edge(u, v);
        return general_reaching_centrality(g);
      },
      py::arg("nodes"), py::arg("edges"));
  m.def(
      "two_level_edges",
      [](int n, int x) { return build_two_level_graph({n, x}).edges(); }, py::arg("n"),
      py::arg("x"));

  m.def("binomial_pmf", &binomial_pmf, py::arg("k"), py::arg("m"), py::arg("p"));

  m.def(
      "wc",
      [](const std::string& variant, int n, double fc, double c, double b, double tau) {
        return wc({n, fc, c, b, tau}, variant_of(variant));
      },
      py::arg("variant"), py::arg("n"), py::arg("fc"), py::arg("c"), py::arg("b"),
      py::arg("tau") = 0.0);
  m.def(
      "wd",
      [](const std::string& variant, int n, double fc, double c, double b, double tau) {
        return wd({n, fc, c, b, tau}, variant_of(variant));
      },
      py::arg("variant"), py::arg("n"), py::arg("fc"), py::arg("c"), py::arg("b"),
      py::arg("tau") = 0.0);
  m.def(
      "coefficients",
      [](const std::string& variant, int n, double fc, const std::string& role, double tau) {
        return coefficient_dict(payoff_coefficients({n, fc, tau}, variant_of(variant),
                                                    parse_role(role)));
      },
      py::arg("variant"), py::arg("n"), py::arg("fc"), py::arg("role"), py::arg("tau") = 0.0,
      "W = a * c + b * benefit for the given role ('C' or 'D').");
  m.def(
      "equilibrium",
      [](const std::string& variant, int n, double fc, double tau) {
        return equilibrium_cb({n, fc, tau}, variant_of(variant));
      },
      py::arg("variant"), py::arg("n"), py::arg("fc"), py::arg("tau") = 0.0,
      "c/b at which W(C) = W(D), or None.");
  m.def(
      "stability",
      [](const std::string& variant, int n, double tau) {
        const auto r = stability_region(n, tau, variant_of(variant));
        return py::make_tuple(r.lower, r.upper);
      },
      py::arg("variant"), py::arg("n"), py::arg("tau") = 0.0);

  m.def(
      "estimate_payoff",
      [](const std::string& variant, int n, double fc, const std::string& role, double c,
         double b, double tau, std::uint64_t reps, std::uint64_t seed, unsigned threads) {
        sim::PayoffEstimate est;
        {
          py::gil_scoped_release nogil;
          est = sim::estimate_payoff({n, fc, c, b, tau}, variant_of(variant), parse_role(role),
                                     reps, seed, threads);
        }
        py::dict d = estimate_dict(est.coefficients);
        d["mean"] = est.payoff.mean;
        d["se"] = est.payoff.std_error;
        d["reps"] = est.payoff.replications;
        d["seed"] = est.payoff.master_seed;
        return d;
      },
      py::arg("variant"), py::arg("n"), py::arg("fc"), py::arg("role"), py::arg("c") = 0.2,
      py::arg("b") = 1.0, py::arg("tau") = 0.0, py::arg("reps") = 100000, py::arg("seed") = 1,
      py::arg("threads") = 0);
  m.def(
      "estimate_equilibrium",
      [](const std::string& variant, int n, double fc, double tau, std::uint64_t reps,
         std::uint64_t seed, unsigned threads) {
        sim::EquilibriumEstimate est;
        {
          py::gil_scoped_release nogil;
          est = sim::estimate_equilibrium({n, fc, tau}, variant_of(variant), reps, seed, threads);
        }
        py::dict d;
        d["cb"] = est.cb;
        d["se"] = est.std_error;
        d["cooperator"] = estimate_dict(est.cooperator);
        d["defector"] = estimate_dict(est.defector);
        return d;
      },
      py::arg("variant"), py::arg("n"), py::arg("fc"), py::arg("tau") = 0.0,
      py::arg("reps") = 100000, py::arg("seed") = 1, py::arg("threads") = 0);

  m.def("replicator_step", &sim::replicator_step, py::arg("fc"), py::arg("wc"), py::arg("wd"));

  m.def("figure_presets", &exp::figure_presets);
  m.def(
      "figure_csv",
      [](const std::string& preset, std::uint64_t reps, std::uint64_t seed, unsigned threads) {
        return exp::figure_csv(preset, {reps, seed, threads});
      },
      py::arg("preset"), py::arg("reps") = 100000, py::arg("seed") = 1, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
}
