// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// Low-level module. Documents cross the boundary as JSON text; the
// tulipba package wraps them in dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "tulipba/error.hpp"
#include "tulipba/io.hpp"
#include "tulipba/montecarlo.hpp"
#include "tulipba/objective.hpp"
#include "tulipba/optimizer.hpp"
#include "tulipba/runner.hpp"
#include "tulipba/tradeoff.hpp"
#include "tulipba/tulip.hpp"

namespace py = pybind11;
using namespace tulipba;

namespace {

AoDPdf pdf_of(const std::string& text) { return pdf_from_json(Json::parse(text)); }

BeamDesign design_of(const std::string& text) { return beams_from_json(Json::parse(text)); }

std::string evaluate_json(const std::string& design, const std::string& policy, int p,
                          const std::string& pdf) {
  const PolicySpec spec = PolicySpec::parse(policy, p);
  const Evaluation ev = evaluate(ObjectiveContext::from_design(design_of(design), pdf_of(pdf), spec));
  return evaluation_to_json(ev, spec).dump();
}

std::string optimize_json(int b, const std::string& policy, int p, const std::string& pdf,
                          int grid, int restarts, std::uint64_t seed, long max_iterations,
                          int threads) {
  OptimizerConfig cfg;
  cfg.grid = grid;
  cfg.restarts = restarts;
  cfg.seed = seed;
  cfg.max_iterations = max_iterations;
  cfg.threads = threads;
  cfg.policy = PolicySpec::parse(policy, p);
  cfg.pdf = pdf_of(pdf);
  const OptimizerResult r = greedy_sa(cfg, b);
  Json doc = design_to_json(r.design);
  doc["lambda_bar"] = r.lambda_bar;
  doc["best_restart"] = r.best_restart;
  Json values = Json::array();
  for (const RestartTrace& t : r.restarts) values.push_back(t.best.lambda_bar);
  doc["restart_lambda_bar"] = values;
  return doc.dump();
}

std::string simulate_json(const std::string& design, const std::string& policy, int p,
                          const std::string& pdf, std::uint64_t trials, std::uint64_t seed,
                          int threads) {
  const BeamDesign d = design_of(design);
  const PolicySpec spec = PolicySpec::parse(policy, p);
  const AoDPdf prior = pdf_of(pdf);
  SimOptions o;
  o.trials = trials;
  o.seed = seed;
  o.threads = threads;
  const SimReport r = simulate(d, spec, prior, o);
  const Evaluation ev = evaluate(ObjectiveContext::from_design(d, prior, spec));
  return sim_report_to_json(r, spec, ev.lambda_bar, &ev).dump();
}

std::string run_json(const std::string& config, const std::string& base_dir) {
  const RunResult r = run(parse_config(Json::parse(config), base_dir));
  Json doc = r.manifest;
  doc["warnings"] = r.warnings;
  return doc.dump();
}

std::vector<std::pair<double, double>> as_pairs(const std::vector<TradeoffPoint>& pts) {
  std::vector<std::pair<double, double>> out;
  for (const TradeoffPoint& pt : pts) out.emplace_back(pt.phi_measure, pt.lambda_measure);
  return out;
}

}  // namespace

PYBIND11_MODULE(_tulipba, m) {
  m.doc() = "Beam-alignment codebook design core";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(e.what(), to_string(e.code()), exit_code(e.code()));
      PyErr_SetObject(error.ptr(), args.ptr());
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("evaluate", &evaluate_json, py::arg("design"), py::arg("policy"), py::arg("p"),
        py::arg("pdf"));
  m.def("optimize", &optimize_json, py::arg("b"), py::arg("policy"), py::arg("p"),
        py::arg("pdf"), py::arg("grid"), py::arg("restarts"), py::arg("seed"),
        py::arg("max_iterations"), py::arg("threads"), py::call_guard<py::gil_scoped_release>());
  m.def("simulate", &simulate_json, py::arg("design"), py::arg("policy"), py::arg("p"),
        py::arg("pdf"), py::arg("trials"), py::arg("seed"), py::arg("threads"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run", &run_json, py::arg("config"), py::arg("base_dir"),
        py::call_guard<py::gil_scoped_release>());
  m.def("design_from_boundaries", [](const std::vector<double>& z) {
    return design_to_json(from_boundaries(z)).dump();
  });
  m.def("describe", [](const std::string& design) {
    return design_to_json(design_of(design)).dump();
  });
  m.def("plot_svg", [](const std::string& design) { return polar_plot_svg(design_of(design)); });
  m.def("tradeoff_endpoints", [](int b) {
    const auto [lo, hi] = tradeoff_endpoints(b);
    return as_pairs({lo, hi});
  });
  m.def("tradeoff_curve", [](int b, const std::string& measure, int samples) {
    return as_pairs(tradeoff_curve(b, parse_measure(measure), samples));
  });
  m.attr("format_version") = kFormatVersion;
}
