// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// tulipba run <config.json|manifest.json> [--output-dir DIR] [--threads N]
// tulipba validate <config.json>
// tulipba plot <design.json> <out.svg>

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tulipba/io.hpp"
#include "tulipba/runner.hpp"

namespace {

int report(const tulipba::Error& e) {
  std::cerr << "error [" << tulipba::to_string(e.code()) << "]: " << e.what() << "\n";
  return tulipba::exit_code(e.code());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tulip beam-alignment codebook optimizer"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  int threads = -1;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run the command described by a config or manifest");
  run->add_option("config", config_path, "Config or manifest JSON")->required();
  run->add_option("--output-dir", output_dir, "Override output.dir");
  run->add_option("--threads", threads, "Override worker threads (0: all cores)")
      ->check(CLI::Range(0, 1024));
  run->add_flag("-q,--quiet", quiet, "No progress messages");

  auto* validate = app.add_subcommand("validate", "Check a config and print its canonical form");
  validate->add_option("config", config_path, "Config JSON")->required();

  std::string design_path;
  std::string svg_path;
  auto* plot = app.add_subcommand("plot", "Render a design JSON as a polar SVG");
  plot->add_option("design", design_path, "Design JSON")->required();
  plot->add_option("svg", svg_path, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*run) {
      tulipba::RunConfig cfg = tulipba::load_config(config_path);
      if (!output_dir.empty()) cfg.output_dir = output_dir;
      if (threads >= 0) cfg.threads = threads;
      tulipba::LogFn log;
      if (!quiet) log = [](const std::string& m) { std::cerr << m << "\n"; };
      const tulipba::RunResult result = tulipba::run(cfg, log);
      for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
      for (const auto& f : result.outputs) std::cout << f.string() << "\n";
    } else if (*validate) {
      const tulipba::RunConfig cfg = tulipba::load_config(config_path);
      std::cout << cfg.canonical().dump(2) << "\n";
    } else if (*plot) {
      const tulipba::Json doc = tulipba::read_json(design_path);
      tulipba::emit_polar_plot(tulipba::beams_from_json(doc), svg_path);
    }
  } catch (const tulipba::Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
