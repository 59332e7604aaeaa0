// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// Acceptance gate. Prints one line per criterion and exits nonzero if any
// selected criterion fails.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "support/fixtures.hpp"
#include "tulipba/montecarlo.hpp"
#include "tulipba/objective.hpp"
#include "tulipba/optimizer.hpp"
#include "tulipba/tradeoff.hpp"
#include "tulipba/tulip.hpp"

using namespace tulipba;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AoDPdf cut_normal() { return AoDPdf::truncated_normal(kPi, 1.0); }

struct Run {
  OptimizerResult result;
  double seconds;
};

// Optimizer runs at desk scale, cached so later criteria reuse them.
const Run& optimized(PolicyKind kind, int p, int b, bool normal) {
  static std::map<std::tuple<PolicyKind, int, int, bool>, Run> cache;
  const auto key = std::make_tuple(kind, p, b, normal);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  OptimizerConfig cfg;
  cfg.grid = 1000;
  cfg.restarts = 20;
  cfg.seed = kSeed;
  cfg.policy = PolicySpec(kind, p);
  if (normal) cfg.pdf = cut_normal();
  const auto t0 = std::chrono::steady_clock::now();
  OptimizerResult r = greedy_sa(cfg, b);
  return cache.emplace(key, Run{std::move(r), seconds_since(t0)}).first->second;
}

std::vector<double> beam_lengths(const TulipDesign& d) {
  const BeamDesign beams = d.beams();
  std::vector<double> out;
  for (const Arc& a : beams.beams()) out.push_back(a.measure());
  std::sort(out.begin(), out.end());
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + fmt("%.3f", x);
  return "(" + s + ")";
}

// Best GES design by pattern search over arc lengths and rotation.
double best_ges(int b, PolicySpec policy, const AoDPdf& pdf) {
  auto value = [&](const std::vector<double>& len, double rot) {
    return lambda_bar(ObjectiveContext::from_design(ges_design(len, rot).beams(), pdf, policy));
  };
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int start = 0; start < 8; ++start) {
    std::vector<double> len(b);
    double total = 0.0;
    for (double& x : len) total += (x = u(rng));
    for (double& x : len) x *= kTwoPi / total;
    double rot = kTwoPi * u(rng);
    double cur = value(len, rot);
    for (double h = 0.25; h > 1e-7; h /= 2) {
      for (bool improved = true; improved;) {
        improved = false;
        for (int i = 0; i < b; ++i) {
          for (int j = 0; j < b; ++j) {
            if (i == j || len[j] <= h + 1e-3) continue;
            std::vector<double> next = len;
            next[i] += h;
            next[j] -= h;
            const double v = value(next, rot);
            if (v < cur - 1e-14) {
              cur = v;
              len = next;
              improved = true;
            }
          }
        }
        for (double dr : {h, -h}) {
          const double v = value(len, rot + dr);
          if (v < cur - 1e-14) {
            cur = v;
            rot += dr;
            improved = true;
          }
        }
      }
    }
    best = std::min(best, cur);
  }
  return best;
}

Outcome criterion1() {
  const Run& run = optimized(PolicyKind::SD, 2, 5, false);
  const DesignClass c = classify(run.result.design, 1e-6);
  const double v = run.result.lambda_bar;
  const bool pass = std::abs(v - 2.26) <= 0.01 && c == DesignClass::ES && run.seconds < 120.0;
  return {pass, fmt("SD b=5 lambda_bar=%.6f (target 2.26 +- 0.01), class=%s, %.2fs", v,
                    to_string(c), run.seconds)};
}

Outcome criterion2() {
  const double targets[] = {1.94, 1.44, 1.14};
  bool pass = true;
  double seconds = 0.0;
  std::string detail;
  for (int b : {3, 4, 5}) {
    const Run& run = optimized(PolicyKind::BF, 2, b, false);
    seconds += run.seconds;
    const DesignClass c = classify(run.result.design, 1e-6);
    const double v = run.result.lambda_bar;
    pass = pass && std::abs(v - targets[b - 3]) <= 0.02 && c != DesignClass::Tulip;
    detail += fmt("b=%d lambda_bar=%.5f (target %.2f) class=%s; ", b, v, targets[b - 3],
                  to_string(c));
  }
  const std::vector<double> ref{0.89, 0.97, 1.09, 1.31, 2.02};
  const std::vector<double> got = beam_lengths(optimized(PolicyKind::BF, 2, 5, false).result.design);
  bool arcs = true;
  for (std::size_t i = 0; i < ref.size(); ++i) arcs = arcs && std::abs(got[i] - ref[i]) <= 0.05;
  pass = pass && arcs && seconds < 300.0;
  detail += fmt("b=5 beam lengths %s vs %s; %.2fs", join(got).c_str(), join(ref).c_str(), seconds);
  return {pass, detail};
}

std::string criterion2_diagnostic() {
  std::string s = "best GES-only designs:";
  for (int b : {3, 4, 5}) {
    s += fmt(" b=%d %.5f", b, best_ges(b, PolicySpec(PolicyKind::BF, 2), AoDPdf::uniform()));
  }
  return s;
}

Outcome criterion3() {
  const Run& psd = optimized(PolicyKind::PSD, 2, 5, false);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& cb : component_beams(psd.result.design.beams())) {
    lo = std::min(lo, cb.region.measure());
    hi = std::max(hi, cb.region.measure());
  }
  const double mid = (lo + hi) / 2;
  const bool equal = hi - mid <= 0.02 && mid - lo <= 0.02;
  const Run& pbf = optimized(PolicyKind::PBF, 2, 5, false);
  const bool pass = std::abs(psd.result.lambda_bar - 1.822) <= 0.02 && equal &&
                    std::abs(pbf.result.lambda_bar - 0.836) <= 0.02;
  return {pass, fmt("2-SD lambda_bar=%.6f (target 1.822), CB widths in [%.4f, %.4f]; "
                    "2-BF lambda_bar=%.6f (target 0.836)",
                    psd.result.lambda_bar, lo, hi, pbf.result.lambda_bar)};
}

Outcome criterion4() {
  const Run& sd = optimized(PolicyKind::SD, 2, 5, true);
  const Run& bf = optimized(PolicyKind::BF, 2, 5, true);
  const DesignClass csd = classify(sd.result.design, 1e-6);
  const DesignClass cbf = classify(bf.result.design, 1e-6);
  const bool pass = std::abs(sd.result.lambda_bar - 1.76) <= 0.03 && csd == DesignClass::Tulip &&
                    std::abs(bf.result.lambda_bar - 0.71) <= 0.03 && cbf != DesignClass::Tulip;
  return {pass, fmt("SD lambda_bar=%.5f (target 1.76) class=%s; BF lambda_bar=%.5f (target 0.71) "
                    "class=%s",
                    sd.result.lambda_bar, to_string(csd), bf.result.lambda_bar, to_string(cbf))};
}

std::string criterion4_diagnostic() {
  return fmt("best GES-only designs under the cut normal: SD %.5f, BF %.5f",
             best_ges(5, PolicySpec(PolicyKind::SD, 2), cut_normal()),
             best_ges(5, PolicySpec(PolicyKind::BF, 2), cut_normal()));
}

Outcome criterion5() {
  bool exact = true;
  for (int b = 2; b <= 16; ++b) {
    const double gamma = kTwoPi / b;
    const auto [lo, hi] = tradeoff_endpoints(b);
    exact = exact && lo.phi_measure == gamma && lo.lambda_measure == gamma &&
            hi.phi_measure == 3 * gamma / 2 && hi.lambda_measure == gamma / 2;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const TradeoffFront front = tradeoff_grid_search(3, 180);
  int agree = 0;
  int total = 0;
  for (TradeoffMeasure m : {TradeoffMeasure::Max, TradeoffMeasure::Mean}) {
    for (const TradeoffPoint& pt : tradeoff_curve(3, m, 21, &front)) {
      ++total;
      if (front_agrees(front, m, pt)) ++agree;
    }
  }
  return {exact && agree == total,
          fmt("endpoints exact for b=2..16: %s; b=3 curve vs N=180 grid search: %d/%d points "
              "agree; %.2fs",
              exact ? "yes" : "no", agree, total, seconds_since(t0))};
}

Outcome criterion6() {
  std::mt19937_64 rng(kSeed);
  bool pass = true;
  std::string detail;
  for (int b : {3, 4}) {
    const BeamDesign tulip = symmetric_tulip(b, kTwoPi / b / 4).beams();
    for (int p : {1, 2}) {
      const int count = count_feedback_sequences(tulip, p);
      int most = 0;
      for (int trial = 0; trial < 10'000; ++trial) {
        most = std::max(most, count_feedback_sequences(testing::random_covering_design(b, rng), p));
      }
      pass = pass && count >= most && (p != 1 || count == 2 * b);
      detail += fmt("b=%d p=%d tulip=%d random max=%d; ", b, p, count, most);
    }
  }
  return {pass, detail};
}

Outcome criterion7() {
  std::mt19937_64 rng(kSeed);
  double worst = 0.0;
  int cases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int b = 2 + trial % 7;
    const BeamDesign d = trial % 2 ? BeamDesign(testing::random_tulip(b, rng).beams())
                                   : testing::random_covering_design(b, rng);
    for (const AoDPdf& pdf : {AoDPdf::uniform(), cut_normal()}) {
      for (int p = 1; p <= 3; ++p) {
        const Evaluation ev =
            evaluate(ObjectiveContext::from_design(d, pdf, PolicySpec(PolicyKind::SD, p)));
        double sum = 0.0;
        for (const FeedbackTerm& t : ev.terms) sum += t.probability;
        worst = std::max(worst, std::abs(sum - 1.0));
        ++cases;
      }
    }
  }
  return {worst <= 1e-9, fmt("%d cases, max |sum P_A - 1| = %.3e", cases, worst)};
}

// Largest objective change within two single-step moves of z.
double two_step_variation(const std::vector<long>& z, const GridObjective& f) {
  const double base = f(z);
  const int b = static_cast<int>(z.size() / 2);
  const auto moves = all_moves(b);
  const int n = f.ground().n;
  double worst = 0.0;
  for (const WindowMove& m1 : moves) {
    std::vector<long> one = z;
    if (!apply_move(one, n, m1)) continue;
    worst = std::max(worst, std::abs(f(one) - base));
    for (const WindowMove& m2 : moves) {
      std::vector<long> two = one;
      if (!apply_move(two, n, m2)) continue;
      worst = std::max(worst, std::abs(f(two) - base));
    }
  }
  return worst;
}

Outcome criterion8() {
  constexpr int kGrid = 36;
  bool pass = true;
  std::string detail;
  bool overlap = false;
  for (int b : {2, 3}) {
    for (PolicyKind kind : {PolicyKind::SD, PolicyKind::BF}) {
      const PolicySpec policy(kind, 2);
      const BruteForceResult exact = brute_force(b, policy, AoDPdf::uniform(), kGrid);
      OptimizerConfig cfg;
      cfg.grid = kGrid;
      cfg.restarts = 20;
      cfg.seed = kSeed;
      cfg.policy = policy;
      const OptimizerResult greedy = greedy_sa(cfg, b);
      const GridObjective f(GroundSet{kGrid}, AoDPdf::uniform(), policy);
      const double tol = two_step_variation(exact.solution.z, f);
      const double gap = greedy.lambda_bar - exact.lambda_bar;
      pass = pass && gap >= -1e-12 && gap <= tol;
      detail += fmt("b=%d %s greedy=%.5f brute=%.5f tol=%.4f; ", b, policy.name().c_str(),
                    greedy.lambda_bar, exact.lambda_bar, tol);
      if (b == 2 && kind == PolicyKind::BF) {
        overlap = classify(exact.design, 1e-9) == DesignClass::Tulip;
      }
    }
  }
  pass = pass && overlap;
  detail += fmt("b=2 BF optimum has an overlap: %s", overlap ? "yes" : "no");
  return {pass, detail};
}

Outcome criterion9() {
  struct Case {
    const char* name;
    PolicyKind kind;
    int b;
    bool normal;
  };
  const Case cases[] = {{"SD b=5", PolicyKind::SD, 5, false},
                        {"BF b=3", PolicyKind::BF, 3, false},
                        {"BF b=4", PolicyKind::BF, 4, false},
                        {"BF b=5", PolicyKind::BF, 5, false},
                        {"2-SD b=5", PolicyKind::PSD, 5, false},
                        {"2-BF b=5", PolicyKind::PBF, 5, false},
                        {"SD cut-normal", PolicyKind::SD, 5, true},
                        {"BF cut-normal", PolicyKind::BF, 5, true}};
  bool pass = true;
  std::string detail;
  for (const Case& c : cases) {
    const Run& run = optimized(c.kind, 2, c.b, c.normal);
    const BeamDesign d = run.result.design.beams();
    const PolicySpec policy(c.kind, 2);
    const AoDPdf pdf = c.normal ? cut_normal() : AoDPdf::uniform();
    const double analytic = lambda_bar(ObjectiveContext::from_design(d, pdf, policy));
    SimOptions o;
    o.trials = 1'000'000;
    o.seed = kSeed;
    const SimReport r = simulate(d, policy, pdf, o);
    const double z = (r.empirical_lambda_bar - analytic) / r.std_error;
    pass = pass && std::abs(z) < 4.0 && r.containment_violations == 0;
    detail += fmt("%s z=%+.2f violations=%llu; ", c.name, z,
                  static_cast<unsigned long long>(r.containment_violations));
  }
  return {pass, detail};
}

Outcome criterion10() {
  std::map<std::pair<PolicyKind, int>, std::vector<double>> series;
  const std::pair<PolicyKind, int> runs[] = {{PolicyKind::SD, 2},  {PolicyKind::BF, 2},
                                             {PolicyKind::PSD, 2}, {PolicyKind::PBF, 2},
                                             {PolicyKind::SD, 3},  {PolicyKind::BF, 3}};
  for (const auto& [kind, p] : runs) {
    for (int b = 3; b <= 8; ++b) {
      series[{kind, p}].push_back(optimized(kind, p, b, false).result.lambda_bar);
    }
  }
  bool pass = true;
  std::string detail;
  for (const auto& [kind, p] : runs) {
    if (p != 2) continue;
    const auto& s = series[{kind, p}];
    bool mono = true;
    for (std::size_t k = 1; k < s.size(); ++k) mono = mono && s[k] <= s[k - 1] + 1e-9;
    pass = pass && mono;
    detail += fmt("%s non-increasing: %s; ", PolicySpec(kind, p).name().c_str(), mono ? "yes" : "no");
  }
  bool bf = true;
  bool sd = true;
  for (std::size_t k = 0; k < 6; ++k) {
    bf = bf && series[{PolicyKind::BF, 3}][k] <= series[{PolicyKind::BF, 2}][k] + 1e-9;
    sd = sd && series[{PolicyKind::SD, 3}][k] >= series[{PolicyKind::SD, 2}][k] - 1e-9;
  }
  pass = pass && bf && sd;
  detail += fmt("BF p=3 <= p=2: %s; SD p=3 >= p=2: %s", bf ? "yes" : "no", sd ? "yes" : "no");
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > 10) {
    std::fprintf(stderr, "criterion must be in 1..10\n");
    return 2;
  }

  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                               criterion5, criterion6, criterion7, criterion8,
                                               criterion9, criterion10};
  bool all = true;
  for (int c = 1; c <= 10; ++c) {
    if (only != 0 && only != c) continue;
    Outcome out{false, ""};
    try {
      out = criteria[c - 1]();
    } catch (const std::exception& e) {
      out.detail = std::string("error: ") + e.what();
    }
    std::printf("criterion %d %s: %s\n", c, out.pass ? "PASS" : "FAIL", out.detail.c_str());
    if (c == 2) std::printf("  info: %s\n", criterion2_diagnostic().c_str());
    if (c == 4) std::printf("  info: %s\n", criterion4_diagnostic().c_str());
    std::fflush(stdout);
    all = all && out.pass;
  }
  return all ? 0 : 1;
}
