// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// File formats: design, evaluation and simulation JSON, curve and sweep CSV,
// and the polar SVG plot. Angles are radians throughout; every format
// carries format_version.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "tulipba/aod.hpp"
#include "tulipba/montecarlo.hpp"
#include "tulipba/objective.hpp"
#include "tulipba/tradeoff.hpp"
#include "tulipba/tulip.hpp"

namespace tulipba {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

Json to_json(IndexSet set);
/// {"start", "end"} with end = start + measure, so end may exceed 2pi.
Json to_json(const Arc& arc);

/// {"format_version", "b", "x", "y", "class", "beams", "boundaries",
/// "component_beams"}.
Json design_to_json(const TulipDesign& design);
/// Beams-only document for designs that are not tulips.
Json design_to_json(const BeamDesign& design);

/// Reads x/y when present (validated as a tulip), else "beams". Throws
/// ErrorCode::Schema naming the offending field.
BeamDesign beams_from_json(const Json& doc);
TulipDesign tulip_from_json(const Json& doc);

/// {"kind": "uniform" | "truncated_normal" | "piecewise" | "mixture", ...}
AoDPdf pdf_from_json(const Json& spec, const std::string& path = "$.pdf");
Json pdf_to_json(const AoDPdf& pdf);

/// {"format_version", "policy", "p", "lambda_bar", "probability_sum", "per_A"}.
Json evaluation_to_json(const Evaluation& eval, const PolicySpec& policy);

/// analytic may be NaN when not computed.
Json sim_report_to_json(const SimReport& report, const PolicySpec& policy, double analytic,
                        const Evaluation* eval = nullptr);
std::string trial_records_csv(const SimReport& report);

std::string tradeoff_csv(const std::vector<TradeoffPoint>& curve);

struct SweepRow {
  int b;
  std::string policy;
  int p;
  double lambda_bar;
  DesignClass design_class;
};
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Circle with one labelled sector per component beam. Output depends only
/// on the design.
std::string polar_plot_svg(const BeamDesign& design);
/// Throws ErrorCode::Io when the file cannot be written.
void emit_polar_plot(const BeamDesign& design, const std::filesystem::path& path);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// ErrorCode::Io on failure.
void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);
/// Parses JSON; ErrorCode::Schema on syntax errors, ErrorCode::Io when
/// unreadable.
Json read_json(const std::filesystem::path& path);

}  // namespace tulipba
