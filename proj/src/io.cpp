// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include "tulipba/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tulipba/error.hpp"

namespace tulipba {
namespace {

[[noreturn]] void schema(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::Schema, path + ": " + message);
}

const Json& field(const Json& doc, const char* key, const std::string& path) {
  if (!doc.is_object()) schema(path, "expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) schema(path + "." + key, "missing");
  return *it;
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) schema(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema(path, "must be finite");
  return d;
}

std::vector<double> numbers(const Json& v, const std::string& path) {
  if (!v.is_array()) schema(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Sector fill per component-beam order |A|.
const char* fill_for(int order) {
  static const char* const kFills[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1"};
  return kFills[(order - 1) % 5];
}

}  // namespace

std::string format_double(double v) { return fmt("%.17g", v); }

Json to_json(IndexSet set) { return Json(set.indices()); }

Json to_json(const Arc& arc) {
  return Json{{"start", arc.start()}, {"end", arc.start() + arc.measure()}};
}

namespace {

Json component_beams_json(const BeamDesign& design) {
  Json cbs = Json::array();
  for (const ComponentBeam& cb : component_beams(design)) {
    Json arcs = Json::array();
    for (const Arc& a : cb.region.arcs()) arcs.push_back(to_json(a));
    cbs.push_back({{"A", to_json(cb.index_set)}, {"arcs", arcs}, {"width", cb.region.measure()}});
  }
  return cbs;
}

Json beams_json(const BeamDesign& design) {
  Json beams = Json::array();
  for (const Arc& a : design.beams()) beams.push_back(to_json(a));
  return beams;
}

}  // namespace

Json design_to_json(const TulipDesign& design) {
  const BeamDesign beams = design.beams();
  return Json{{"format_version", kFormatVersion},
              {"b", design.size()},
              {"x", design.x},
              {"y", design.y},
              {"class", to_string(classify(design))},
              {"beams", beams_json(beams)},
              {"boundaries", to_boundaries(design)},
              {"component_beams", component_beams_json(beams)}};
}

Json design_to_json(const BeamDesign& design) {
  return Json{{"format_version", kFormatVersion},
              {"b", design.size()},
              {"beams", beams_json(design)},
              {"component_beams", component_beams_json(design)}};
}

TulipDesign tulip_from_json(const Json& doc) {
  TulipDesign d;
  d.x = numbers(field(doc, "x", "$"), "$.x");
  d.y = numbers(field(doc, "y", "$"), "$.y");
  if (d.x.size() != d.y.size()) schema("$.y", "x and y must have the same length");
  if (doc.contains("b") && doc["b"] != static_cast<int>(d.x.size())) {
    schema("$.b", "does not match the length of x");
  }
  const std::vector<Violation> bad = validate(d);
  if (!bad.empty()) {
    schema("$.x", "tulip constraint '" + bad.front().constraint + "' violated at index " +
                      std::to_string(bad.front().index));
  }
  return d;
}

BeamDesign beams_from_json(const Json& doc) {
  if (!doc.is_object()) schema("$", "expected a design object");
  if (doc.contains("x")) return tulip_from_json(doc).beams();
  const Json& list = field(doc, "beams", "$");
  if (!list.is_array()) schema("$.beams", "expected an array");
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "$.beams[" + std::to_string(i) + "]";
    const double start = number(field(list[i], "start", path), path + ".start");
    const double end = number(field(list[i], "end", path), path + ".end");
    const double width = end - start;
    if (!(width > 0.0) || width > kTwoPi + kGeoEps) schema(path, "width must be in (0, 2pi]");
    arcs.push_back(Arc::from_length(start, width));
  }
  try {
    return BeamDesign(std::move(arcs));
  } catch (const Error& e) {
    schema("$.beams", e.what());
  }
}

AoDPdf pdf_from_json(const Json& spec, const std::string& path) {
  if (spec.is_string()) {
    if (spec == "uniform") return AoDPdf::uniform();
    schema(path, "unknown pdf '" + spec.get<std::string>() + "'");
  }
  const Json& kind_v = field(spec, "kind", path);
  if (!kind_v.is_string()) schema(path + ".kind", "expected a string");
  const std::string kind = kind_v.get<std::string>();
  auto only = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : spec.items()) {
      bool known = k == "kind";
      for (const char* allowed : keys) known = known || k == allowed;
      if (!known) schema(path + "." + k, "unknown field");
    }
  };
  try {
    if (kind == "uniform") {
      only({});
      return AoDPdf::uniform();
    }
    if (kind == "truncated_normal") {
      only({"mu", "sigma"});
      const double mu = number(field(spec, "mu", path), path + ".mu");
      const double sigma = number(field(spec, "sigma", path), path + ".sigma");
      if (mu < 0.0 || mu > kTwoPi) schema(path + ".mu", "must be in [0, 2pi]");
      if (!(sigma > 0.0) || sigma > 100.0) schema(path + ".sigma", "must be in (0, 100]");
      return AoDPdf::truncated_normal(mu, sigma);
    }
    if (kind == "piecewise") {
      only({"breakpoints", "densities"});
      return AoDPdf::piecewise(numbers(field(spec, "breakpoints", path), path + ".breakpoints"),
                               numbers(field(spec, "densities", path), path + ".densities"));
    }
    if (kind == "mixture") {
      only({"weights", "components"});
      const std::vector<double> weights =
          numbers(field(spec, "weights", path), path + ".weights");
      const Json& comps = field(spec, "components", path);
      if (!comps.is_array()) schema(path + ".components", "expected an array");
      std::vector<AoDPdf> pdfs;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        pdfs.push_back(pdf_from_json(comps[i], path + ".components[" + std::to_string(i) + "]"));
      }
      return mixture_of(std::move(pdfs), weights);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Schema) throw;
    schema(path, e.what());
  }
  schema(path + ".kind", "unknown pdf kind '" + kind + "'");
}

Json pdf_to_json(const AoDPdf& pdf) {
  return std::visit(
      [](const auto& k) -> Json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, UniformPdf>) {
          return Json{{"kind", "uniform"}};
        } else if constexpr (std::is_same_v<K, TruncatedNormalPdf>) {
          return Json{{"kind", "truncated_normal"}, {"mu", k.mu}, {"sigma", k.sigma}};
        } else if constexpr (std::is_same_v<K, PiecewiseConstantPdf>) {
          return Json{{"kind", "piecewise"},
                      {"breakpoints", k.breakpoints},
                      {"densities", k.densities}};
        } else {
          Json comps = Json::array();
          for (const AoDPdf& c : k.components) comps.push_back(pdf_to_json(c));
          return Json{{"kind", "mixture"}, {"weights", k.weights}, {"components", comps}};
        }
      },
      pdf.kind());
}

Json evaluation_to_json(const Evaluation& eval, const PolicySpec& policy) {
  Json per_a = Json::array();
  double total = 0.0;
  for (const FeedbackTerm& t : eval.terms) {
    per_a.push_back({{"A", to_json(t.set)}, {"P_A", t.probability}, {"width", t.width}});
    total += t.probability;
  }
  return Json{{"format_version", kFormatVersion},
              {"policy", policy.name()},
              {"p", policy.paths()},
              {"lambda_bar", eval.lambda_bar},
              {"probability_sum", total},
              {"per_A", per_a}};
}

Json sim_report_to_json(const SimReport& report, const PolicySpec& policy, double analytic,
                        const Evaluation* eval) {
  Json per_a = Json::array();
  for (const auto& [set, count] : report.counts) {
    Json row{{"A", to_json(set)}, {"count", count}, {"frequency", report.frequency(set)}};
    if (eval != nullptr) {
      for (const FeedbackTerm& t : eval->terms) {
        if (t.set == set) row["P_A"] = t.probability;
      }
    }
    per_a.push_back(row);
  }
  Json doc{{"format_version", kFormatVersion},
           {"policy", policy.name()},
           {"p", policy.paths()},
           {"trials", report.trials},
           {"seed", report.seed},
           {"empirical_lambda_bar", report.empirical_lambda_bar},
           {"std_error", report.std_error},
           {"mean_gain_proxy", report.mean_gain_proxy},
           {"containment_violations", report.containment_violations},
           {"per_A", per_a}};
  if (std::isfinite(analytic)) {
    doc["analytic_lambda_bar"] = analytic;
    doc["z_score"] = report.std_error > 0.0
                         ? (report.empirical_lambda_bar - analytic) / report.std_error
                         : 0.0;
  }
  return doc;
}

std::string trial_records_csv(const SimReport& report) {
  std::string out = "trial,A,width\n";
  for (const TrialRecord& r : report.records) {
    std::string set;
    for (int i : r.set.indices()) set += (set.empty() ? "" : " ") + std::to_string(i);
    out += std::to_string(r.trial) + "," + set + "," + format_double(r.width) + "\n";
  }
  return out;
}

std::string tradeoff_csv(const std::vector<TradeoffPoint>& curve) {
  std::string out = "phi_measure,lambda_measure,bound_type,format_version\n";
  for (const TradeoffPoint& pt : curve) {
    out += format_double(pt.phi_measure) + "," + format_double(pt.lambda_measure) + "," +
           (pt.optimal ? "optimal" : "upper_bound") + "," + std::to_string(kFormatVersion) + "\n";
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "b,policy,p,lambda_bar,class,format_version\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.b) + "," + r.policy + "," + std::to_string(r.p) + "," +
           format_double(r.lambda_bar) + "," + to_string(r.design_class) + "," +
           std::to_string(kFormatVersion) + "\n";
  }
  return out;
}

std::string polar_plot_svg(const BeamDesign& design) {
  constexpr double kC = 280.0;
  constexpr double kOuter = 170.0;
  constexpr double kInner = 100.0;
  constexpr double kLabel = 205.0;
  auto px = [](double r, double a) { return fmt("%.3f", kC + r * std::cos(a)); };
  auto py = [](double r, double a) { return fmt("%.3f", kC - r * std::sin(a)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" height=\"560\" "
         "viewBox=\"0 0 560 560\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<!-- format_version " << kFormatVersion << " -->\n"
      << "<circle cx=\"280\" cy=\"280\" r=\"" << kOuter
      << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";

  auto sector = [&](double a0, double a1, const char* fill) {
    const int large = a1 - a0 > std::numbers::pi ? 1 : 0;
    svg << "<path d=\"M " << px(kInner, a0) << " " << py(kInner, a0) << " L " << px(kOuter, a0)
        << " " << py(kOuter, a0) << " A " << kOuter << " " << kOuter << " 0 " << large << " 0 "
        << px(kOuter, a1) << " " << py(kOuter, a1) << " L " << px(kInner, a1) << " "
        << py(kInner, a1) << " A " << kInner << " " << kInner << " 0 " << large << " 1 "
        << px(kInner, a0) << " " << py(kInner, a0) << " Z\" fill=\"" << fill
        << "\" stroke=\"#fff\" stroke-width=\"1\"/>\n";
  };

  for (const ComponentBeam& cb : component_beams(design)) {
    const char* fill = fill_for(cb.index_set.size());
    for (const Arc& arc : cb.region.arcs()) {
      const double a0 = arc.start();
      const double len = arc.measure();
      // Split so that no single SVG arc spans half a turn or more.
      const int pieces = static_cast<int>(std::ceil(len / (std::numbers::pi * 0.9)));
      for (int k = 0; k < pieces; ++k) {
        sector(a0 + len * k / pieces, a0 + len * (k + 1) / pieces, fill);
      }
      const double mid = a0 + 0.5 * len;
      svg << "<text x=\"" << px(kLabel, mid) << "\" y=\"" << py(kLabel, mid)
          << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << cb.index_set.label()
          << " " << fmt("%.3f", len) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_polar_plot(const BeamDesign& design, const std::filesystem::path& path) {
  write_text(path, polar_plot_svg(design));
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Schema, path.string() + ": " + e.what());
  }
}

}  // namespace tulipba
