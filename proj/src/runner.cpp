// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include "tulipba/runner.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <set>

#include "tulipba/montecarlo.hpp"
#include "tulipba/objective.hpp"
#include "tulipba/optimizer.hpp"

#ifndef TULIPBA_VERSION
#define TULIPBA_VERSION "0.0.0"
#endif

namespace tulipba {
namespace fs = std::filesystem;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::Schema, path + ": " + message);
}

std::int64_t integer(const Json& doc, const char* key, std::int64_t lo, std::int64_t hi,
                     std::int64_t fallback) {
  const std::string path = std::string("$.") + key;
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_number_integer()) schema(path, "expected an integer");
  if (it->is_number_unsigned() && it->get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
    schema(path, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const std::int64_t v = it->get<std::int64_t>();
  if (v < lo || v > hi) {
    schema(path, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return v;
}

bool boolean(const Json& doc, const char* key, const std::string& prefix) {
  const auto it = doc.find(key);
  if (it == doc.end()) return false;
  if (!it->is_boolean()) schema(prefix + "." + key, "expected true or false");
  return it->get<bool>();
}

std::string policy_name(const Json& v, const std::string& path) {
  static const std::set<std::string> kNames{"sd", "bf", "2sd", "2bf"};
  if (!v.is_string() || kNames.count(v.get<std::string>()) == 0) {
    schema(path, "expected one of \"sd\", \"bf\", \"2sd\", \"2bf\"");
  }
  return v.get<std::string>();
}

Command parse_command(const Json& doc) {
  const auto it = doc.find("command");
  if (it == doc.end()) schema("$.command", "missing");
  if (it->is_string()) {
    const std::string c = it->get<std::string>();
    if (c == "optimize") return Command::Optimize;
    if (c == "evaluate") return Command::Evaluate;
    if (c == "tradeoff") return Command::Tradeoff;
    if (c == "simulate") return Command::Simulate;
    if (c == "sweep") return Command::Sweep;
  }
  schema("$.command", "expected one of optimize, evaluate, tradeoff, simulate, sweep");
}

std::set<std::string> allowed_keys(Command c) {
  std::set<std::string> keys{"format_version", "command", "output", "seed", "threads"};
  auto add = [&](std::initializer_list<const char*> more) { keys.insert(more.begin(), more.end()); };
  switch (c) {
    case Command::Optimize:
      add({"b", "p", "policy", "pdf", "grid", "restarts", "max_iterations"});
      break;
    case Command::Evaluate: add({"design", "p", "policy", "pdf"}); break;
    case Command::Simulate: add({"design", "p", "policy", "pdf", "trials"}); break;
    case Command::Tradeoff: add({"b", "measure", "samples", "cross_check_grid"}); break;
    case Command::Sweep:
      add({"b_min", "b_max", "p", "policies", "pdf", "grid", "restarts", "max_iterations"});
      break;
  }
  return keys;
}

Json load_design(const Json& v, const fs::path& base_dir) {
  Json doc = v;
  if (v.is_string()) {
    const fs::path p = v.get<std::string>();
    doc = read_json(p.is_absolute() ? p : base_dir / p);
  }
  try {
    beams_from_json(doc);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Schema) throw;
    const std::string what = e.what();
    schema("$.design" + (what.rfind('$', 0) == 0 ? what.substr(1, what.find(':') - 1) : ""),
           what.substr(what.find(':') + 2));
  }
  return doc;
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Json versions() {
  return Json{{"tulipba", TULIPBA_VERSION},
              {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
              {"compiler", __VERSION__},
              {"cxx_standard", static_cast<long>(__cplusplus)}};
}

void require_emittable(const TulipDesign& d) {
  if (!validate(d).empty() || !coverage_check(d.beams())) {
    throw Error(ErrorCode::InternalConsistency, "optimizer produced an invalid design");
  }
}

struct Outputs {
  fs::path dir;
  std::vector<fs::path> files;

  void text(const std::string& name, const std::string& content) {
    write_text(dir / name, content);
    files.push_back(dir / name);
  }
  void json(const std::string& name, const Json& doc) { text(name, doc.dump(2) + "\n"); }
  Json names() const {
    Json out = Json::array();
    for (const fs::path& f : files) out.push_back(f.filename().string());
    return out;
  }
};

Json restart_json(const RestartTrace& t) {
  return Json{{"restart", t.restart},
              {"lambda_bar", t.best.lambda_bar},
              {"evaluations", t.evaluations},
              {"moves", t.lambda_trace.empty() ? 0 : t.lambda_trace.size() - 1},
              {"lambda_trace", t.lambda_trace}};
}

std::string trajectory_csv(const std::vector<RestartTrace>& traces) {
  std::string out = "restart,step,lambda_bar,format_version\n";
  for (const RestartTrace& t : traces) {
    for (std::size_t k = 0; k < t.lambda_trace.size(); ++k) {
      out += std::to_string(t.restart) + "," + std::to_string(k) + "," +
             format_double(t.lambda_trace[k]) + "," + std::to_string(kFormatVersion) + "\n";
    }
  }
  return out;
}

OptimizerConfig optimizer_config(const RunConfig& cfg, PolicySpec policy, const AoDPdf& pdf) {
  OptimizerConfig oc;
  oc.grid = cfg.grid;
  oc.restarts = cfg.restarts;
  oc.seed = cfg.seed;
  oc.max_iterations = cfg.max_iterations;
  oc.policy = policy;
  oc.pdf = pdf;
  oc.threads = cfg.threads;
  return oc;
}

Json optimized_design_json(const TulipDesign& d, double grid_lambda, const PolicySpec& policy,
                           const AoDPdf& pdf, const RunConfig& cfg, bool converged) {
  const Evaluation eval = evaluate(ObjectiveContext::from_design(d.beams(), pdf, policy));
  Json doc = design_to_json(d);
  doc["lambda_bar"] = eval.lambda_bar;
  doc["grid_lambda_bar"] = grid_lambda;
  doc["policy"] = policy.name();
  doc["p"] = policy.paths();
  doc["pdf"] = pdf_to_json(pdf);
  doc["grid"] = cfg.grid;
  doc["converged"] = converged;
  return doc;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Optimize: return "optimize";
    case Command::Evaluate: return "evaluate";
    case Command::Tradeoff: return "tradeoff";
    case Command::Simulate: return "simulate";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

RunConfig parse_config(const Json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) schema("$", "expected an object");
  RunConfig cfg;
  cfg.command = parse_command(doc);
  const std::set<std::string> keys = allowed_keys(cfg.command);
  for (const auto& [k, v] : doc.items()) {
    if (keys.count(k) == 0) {
      schema("$." + k, std::string("unknown field for command ") + to_string(cfg.command));
    }
  }
  if (doc.contains("format_version") && doc["format_version"] != kFormatVersion) {
    schema("$.format_version", "unsupported version");
  }

  const bool stochastic = cfg.command == Command::Optimize || cfg.command == Command::Sweep ||
                          cfg.command == Command::Simulate;
  if (stochastic && !doc.contains("seed")) schema("$.seed", "missing");
  if (doc.contains("seed")) {
    const Json& s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      schema("$.seed", "expected a nonnegative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  cfg.threads = static_cast<int>(integer(doc, "threads", 0, 1024, 0));

  if (doc.contains("output")) {
    const Json& out = doc["output"];
    if (!out.is_object()) schema("$.output", "expected an object");
    for (const auto& [k, v] : out.items()) {
      if (k != "dir" && k != "plot" && k != "trajectory" && k != "trial_records") {
        schema("$.output." + k, "unknown field");
      }
    }
    if (out.contains("dir")) {
      if (!out["dir"].is_string() || out["dir"].get<std::string>().empty()) {
        schema("$.output.dir", "expected a nonempty path");
      }
      const fs::path dir = out["dir"].get<std::string>();
      cfg.output_dir = (dir.is_absolute() ? dir : base_dir / dir).lexically_normal();
    } else {
      cfg.output_dir = base_dir;
    }
    cfg.plot = boolean(out, "plot", "$.output");
    cfg.trajectory = boolean(out, "trajectory", "$.output");
    cfg.trial_records = boolean(out, "trial_records", "$.output");
  } else {
    cfg.output_dir = base_dir;
  }

  const bool needs_policy = cfg.command == Command::Optimize ||
                            cfg.command == Command::Evaluate || cfg.command == Command::Simulate;
  if (needs_policy) {
    if (!doc.contains("policy")) schema("$.policy", "missing");
    cfg.policies = {policy_name(doc["policy"], "$.policy")};
    cfg.paths = {static_cast<int>(integer(doc, "p", 1, 3, 2))};
    try {
      PolicySpec::parse(cfg.policies[0], cfg.paths[0]);
    } catch (const Error& e) {
      schema("$.policy", e.what());
    }
  }
  if (cfg.command != Command::Tradeoff) {
    if (doc.contains("pdf")) cfg.pdf_spec = pdf_to_json(pdf_from_json(doc["pdf"], "$.pdf"));
  }

  switch (cfg.command) {
    case Command::Optimize:
      if (!doc.contains("b")) schema("$.b", "missing");
      cfg.b = static_cast<int>(integer(doc, "b", 2, 64, 0));
      cfg.grid = static_cast<int>(integer(doc, "grid", 8 * cfg.b, 1'000'000, 1000));
      cfg.restarts = static_cast<int>(integer(doc, "restarts", 1, 100'000, 20));
      cfg.max_iterations = integer(doc, "max_iterations", 1, 1'000'000'000, 1'000'000);
      break;
    case Command::Evaluate:
    case Command::Simulate:
      if (!doc.contains("design")) schema("$.design", "missing");
      cfg.design = load_design(doc["design"], base_dir);
      if (cfg.command == Command::Simulate) {
        cfg.trials = static_cast<std::uint64_t>(integer(doc, "trials", 1, 10'000'000'000, 1'000'000));
      }
      break;
    case Command::Tradeoff:
      if (!doc.contains("b")) schema("$.b", "missing");
      cfg.b = static_cast<int>(integer(doc, "b", 2, 64, 0));
      if (doc.contains("measure")) {
        const Json& m = doc["measure"];
        if (!m.is_string() || (m != "max" && m != "mean")) {
          schema("$.measure", "expected \"max\" or \"mean\"");
        }
        cfg.measure = parse_measure(m.get<std::string>());
      }
      cfg.samples = static_cast<int>(integer(doc, "samples", 2, 10'001, 11));
      cfg.cross_check_grid = static_cast<int>(integer(doc, "cross_check_grid", 0, 100'000, 0));
      if (cfg.cross_check_grid != 0 && cfg.cross_check_grid < 2 * cfg.b) {
        schema("$.cross_check_grid", "must be 0 or at least 2b");
      }
      break;
    case Command::Sweep: {
      cfg.b_min = static_cast<int>(integer(doc, "b_min", 2, 64, 3));
      cfg.b_max = static_cast<int>(integer(doc, "b_max", 2, 64, 8));
      if (cfg.b_max < cfg.b_min) schema("$.b_max", "must be at least b_min");
      cfg.grid = static_cast<int>(integer(doc, "grid", 8 * cfg.b_max, 1'000'000, 1000));
      cfg.restarts = static_cast<int>(integer(doc, "restarts", 1, 100'000, 20));
      cfg.max_iterations = integer(doc, "max_iterations", 1, 1'000'000'000, 1'000'000);
      if (doc.contains("policies")) {
        const Json& list = doc["policies"];
        if (!list.is_array() || list.empty()) schema("$.policies", "expected a nonempty array");
        cfg.policies.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
          cfg.policies.push_back(policy_name(list[i], "$.policies[" + std::to_string(i) + "]"));
        }
      } else {
        cfg.policies = {"sd", "bf", "2sd", "2bf"};
      }
      if (doc.contains("p") && doc["p"].is_array()) {
        const Json& list = doc["p"];
        if (list.empty()) schema("$.p", "expected a nonempty array");
        cfg.paths.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
          const Json& v = list[i];
          if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || v.get<std::int64_t>() > 3) {
            schema("$.p[" + std::to_string(i) + "]", "must be an integer in [1, 3]");
          }
          cfg.paths.push_back(v.get<int>());
        }
      } else {
        cfg.paths = {static_cast<int>(integer(doc, "p", 1, 3, 2))};
      }
      break;
    }
  }
  return cfg;
}

Json RunConfig::canonical() const {
  Json doc{{"format_version", kFormatVersion}, {"command", to_string(command)}, {"seed", seed},
           {"threads", threads}};
  switch (command) {
    case Command::Optimize:
      doc.update({{"b", b}, {"p", paths[0]}, {"policy", policies[0]}, {"pdf", pdf_spec},
                  {"grid", grid}, {"restarts", restarts}, {"max_iterations", max_iterations}});
      break;
    case Command::Evaluate:
      doc.update({{"design", design}, {"p", paths[0]}, {"policy", policies[0]}, {"pdf", pdf_spec}});
      break;
    case Command::Simulate:
      doc.update({{"design", design}, {"p", paths[0]}, {"policy", policies[0]}, {"pdf", pdf_spec},
                  {"trials", trials}});
      break;
    case Command::Tradeoff:
      doc.update({{"b", b}, {"measure", to_string(measure)}, {"samples", samples},
                  {"cross_check_grid", cross_check_grid}});
      break;
    case Command::Sweep:
      doc.update({{"b_min", b_min}, {"b_max", b_max}, {"p", paths}, {"policies", policies},
                  {"pdf", pdf_spec}, {"grid", grid}, {"restarts", restarts},
                  {"max_iterations", max_iterations}});
      break;
  }
  doc["output"] = {{"dir", output_dir.string()}, {"plot", plot}, {"trajectory", trajectory},
                   {"trial_records", trial_records}};
  return doc;
}

RunConfig load_config(const fs::path& path) {
  Json doc = read_json(path);
  if (doc.is_object() && doc.contains("config") && doc.contains("config_hash")) {
    doc = doc["config"];
    // Manifests store resolved output paths; keep them as written.
    return parse_config(doc, fs::path("."));
  }
  return parse_config(doc, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

std::uint64_t config_hash(const RunConfig& config) {
  Json doc = config.canonical();
  doc.erase("output");
  doc.erase("threads");
  const std::string text = doc.dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Schema:
    case ErrorCode::InvalidAngle:
    case ErrorCode::InvalidDesign:
    case ErrorCode::InvalidWeights:
    case ErrorCode::InvalidResolution:
    case ErrorCode::InvalidPdf:
    case ErrorCode::InvalidPolicy:
    case ErrorCode::InvalidBoundaries:
    case ErrorCode::InvalidInput:
      return 2;
    case ErrorCode::NoCandidate:
    case ErrorCode::CombinatorialLimit:
    case ErrorCode::NotCovering:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::Infeasible:
    case ErrorCode::Io:
      return 3;
    case ErrorCode::NumericalInstability:
    case ErrorCode::InternalConsistency:
    case ErrorCode::NonConvergence:
      return 4;
  }
  return 4;
}

RunResult run(const RunConfig& cfg, const LogFn& log) {
  auto say = [&](const std::string& msg) {
    if (log) log(msg);
  };
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + cfg.output_dir.string() + ": " + ec.message());

  RunResult result;
  Outputs out{cfg.output_dir, {}};
  Json manifest{{"format_version", kFormatVersion},
                {"tool", "tulipba"},
                {"version", TULIPBA_VERSION},
                {"command", to_string(cfg.command)},
                {"config", cfg.canonical()},
                {"config_hash", hex64(config_hash(cfg))},
                {"seed", cfg.seed},
                {"versions", versions()}};
  const AoDPdf pdf = cfg.command == Command::Tradeoff ? AoDPdf::uniform()
                                                      : pdf_from_json(cfg.pdf_spec, "$.pdf");

  switch (cfg.command) {
    case Command::Optimize: {
      const PolicySpec policy = PolicySpec::parse(cfg.policies[0], cfg.paths[0]);
      say("optimize b=" + std::to_string(cfg.b) + " policy=" + policy.name() +
          " N=" + std::to_string(cfg.grid) + " restarts=" + std::to_string(cfg.restarts));
      const OptimizerConfig oc = optimizer_config(cfg, policy, pdf);
      try {
        const OptimizerResult res = greedy_sa(oc, cfg.b);
        require_emittable(res.design);
        const Json design =
            optimized_design_json(res.design, res.lambda_bar, policy, pdf, cfg, true);
        out.json("design.json", design);
        if (cfg.trajectory) out.text("trajectory.csv", trajectory_csv(res.restarts));
        if (cfg.plot) {
          emit_polar_plot(res.design.beams(), cfg.output_dir / "design.svg");
          out.files.push_back(cfg.output_dir / "design.svg");
        }
        Json traces = Json::array();
        for (const RestartTrace& t : res.restarts) traces.push_back(restart_json(t));
        manifest["best_restart"] = res.best_restart;
        manifest["restarts"] = traces;
        manifest["design"] = design;
        say("lambda_bar=" + format_double(design["lambda_bar"].get<double>()) + " class=" +
            design["class"].get<std::string>());
      } catch (const NonConvergenceError& e) {
        const TulipDesign best = e.best().design(GroundSet{cfg.grid});
        out.json("design.json",
                 optimized_design_json(best, e.best().lambda_bar, policy, pdf, cfg, false));
        manifest["outputs"] = out.names();
        out.json("manifest.json", manifest);
        throw;
      }
      break;
    }
    case Command::Evaluate: {
      const PolicySpec policy = PolicySpec::parse(cfg.policies[0], cfg.paths[0]);
      const BeamDesign design = beams_from_json(cfg.design);
      const Evaluation eval = evaluate(ObjectiveContext::from_design(design, pdf, policy));
      Json doc = evaluation_to_json(eval, policy);
      doc["pdf"] = cfg.pdf_spec;
      if (cfg.design.contains("x")) doc["class"] = to_string(classify(tulip_from_json(cfg.design)));
      out.json("evaluation.json", doc);
      if (cfg.plot) {
        emit_polar_plot(design, cfg.output_dir / "design.svg");
        out.files.push_back(cfg.output_dir / "design.svg");
      }
      manifest["lambda_bar"] = eval.lambda_bar;
      say("lambda_bar=" + format_double(eval.lambda_bar));
      break;
    }
    case Command::Simulate: {
      const PolicySpec policy = PolicySpec::parse(cfg.policies[0], cfg.paths[0]);
      const BeamDesign design = beams_from_json(cfg.design);
      const Evaluation eval = evaluate(ObjectiveContext::from_design(design, pdf, policy));
      SimOptions opts;
      opts.trials = cfg.trials;
      opts.seed = cfg.seed;
      opts.threads = cfg.threads;
      opts.record_trials = cfg.trial_records;
      const SimReport report = simulate(design, policy, pdf, opts);
      Json doc = sim_report_to_json(report, policy, eval.lambda_bar, &eval);
      doc["pdf"] = cfg.pdf_spec;
      out.json("report.json", doc);
      if (cfg.trial_records) out.text("trials.csv", trial_records_csv(report));
      manifest["empirical_lambda_bar"] = report.empirical_lambda_bar;
      manifest["analytic_lambda_bar"] = eval.lambda_bar;
      say("empirical=" + format_double(report.empirical_lambda_bar) +
          " analytic=" + format_double(eval.lambda_bar) +
          " violations=" + std::to_string(report.containment_violations));
      if (report.containment_violations > 0) {
        manifest["outputs"] = out.names();
        out.json("manifest.json", manifest);
        throw Error(ErrorCode::InternalConsistency,
                    std::to_string(report.containment_violations) +
                        " trials decoded to a region missing the promised paths");
      }
      break;
    }
    case Command::Tradeoff: {
      std::optional<TradeoffFront> front;
      if (cfg.cross_check_grid > 0) {
        say("exhaustive cross-check on N=" + std::to_string(cfg.cross_check_grid));
        front = tradeoff_grid_search(cfg.b, cfg.cross_check_grid);
      }
      const std::vector<TradeoffPoint> curve =
          tradeoff_curve(cfg.b, cfg.measure, cfg.samples, front ? &*front : nullptr);
      out.text("curve.csv", tradeoff_csv(curve));
      break;
    }
    case Command::Sweep: {
      std::vector<SweepRow> rows;
      Json series = Json::array();
      for (const std::string& name : cfg.policies) {
        for (int p : cfg.paths) {
          std::optional<PolicySpec> policy;
          try {
            policy = PolicySpec::parse(name, p);
          } catch (const Error& e) {
            result.warnings.push_back("skipping " + name + " with p=" + std::to_string(p) + ": " +
                                      e.what());
            continue;
          }
          double previous = std::numeric_limits<double>::infinity();
          bool monotone = true;
          for (int b = cfg.b_min; b <= cfg.b_max; ++b) {
            const OptimizerResult res = greedy_sa(optimizer_config(cfg, *policy, pdf), b);
            require_emittable(res.design);
            rows.push_back({b, name, p, res.lambda_bar, classify(res.design)});
            monotone = monotone && res.lambda_bar <= previous + 1e-12;
            previous = res.lambda_bar;
            say(name + " p=" + std::to_string(p) + " b=" + std::to_string(b) +
                " lambda_bar=" + format_double(res.lambda_bar));
          }
          if (!monotone) {
            result.warnings.push_back(name + " p=" + std::to_string(p) +
                                      ": lambda_bar increases with b");
          }
          series.push_back({{"policy", name}, {"p", p}, {"monotone", monotone}});
        }
      }
      out.text("sweep.csv", sweep_csv(rows));
      manifest["series"] = series;
      break;
    }
  }

  if (!result.warnings.empty()) manifest["warnings"] = result.warnings;
  out.files.push_back(cfg.output_dir / "manifest.json");
  manifest["outputs"] = out.names();
  write_text(cfg.output_dir / "manifest.json", manifest.dump(2) + "\n");
  result.outputs = out.files;
  result.manifest = std::move(manifest);
  return result;
}

}  // namespace tulipba
