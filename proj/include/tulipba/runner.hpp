// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// Config-driven experiment runner behind the command-line tool.
//
// A config is one JSON object. Every field is validated before any
// computation; violations raise ErrorCode::Schema with a "$.field" path.
// Commands and their outputs:
//
//   optimize  design.json, manifest.json [, trajectory.csv, design.svg]
//   evaluate  evaluation.json, manifest.json [, design.svg]
//   simulate  report.json, manifest.json [, trials.csv]
//   tradeoff  curve.csv, manifest.json
//   sweep     sweep.csv, manifest.json

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "tulipba/error.hpp"
#include "tulipba/io.hpp"
#include "tulipba/tradeoff.hpp"

namespace tulipba {

enum class Command { Optimize, Evaluate, Tradeoff, Simulate, Sweep };
const char* to_string(Command c);

struct RunConfig {
  Command command = Command::Optimize;
  int b = 5;
  std::vector<int> paths{2};
  std::vector<std::string> policies{"sd"};
  Json pdf_spec = Json{{"kind", "uniform"}};
  int grid = 1000;
  int restarts = 20;
  std::uint64_t seed = 0;
  long max_iterations = 1'000'000;
  int threads = 0;
  Json design;  // inline design document (evaluate, simulate)
  std::uint64_t trials = 1'000'000;
  TradeoffMeasure measure = TradeoffMeasure::Max;
  int samples = 11;
  int cross_check_grid = 0;
  int b_min = 3;
  int b_max = 8;
  std::filesystem::path output_dir = ".";
  bool plot = false;
  bool trajectory = false;
  bool trial_records = false;

  /// Normalised echo with every default filled in; designs are inlined.
  Json canonical() const;
};

/// Relative design paths resolve against base_dir.
RunConfig parse_config(const Json& doc, const std::filesystem::path& base_dir = ".");
/// Accepts either a config or a manifest written by run().
RunConfig load_config(const std::filesystem::path& path);

/// 64-bit FNV-1a of the canonical config without its output section.
std::uint64_t config_hash(const RunConfig& config);

/// 0 success, 2 schema/invalid input, 3 infeasible or I/O, 4 numerical.
int exit_code(ErrorCode code);

struct RunResult {
  std::vector<std::filesystem::path> outputs;
  Json manifest;
  std::vector<std::string> warnings;
};

using LogFn = std::function<void(const std::string&)>;

/// Runs one command and writes its files into config.output_dir.
RunResult run(const RunConfig& config, const LogFn& log = {});

}  // namespace tulipba
