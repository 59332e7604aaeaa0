// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include "tulipba/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tulipba/error.hpp"

namespace tulipba {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-9;

void require_beams(int b) {
  if (b < 2 || b > 64) throw Error(ErrorCode::InvalidInput, "b must be in [2, 64]");
}

// Best lambda measure of symmetric tulips with overlap at most v_max. With
// b = 2 both overlaps form the single component beam {0, 1}.
double family_lambda(int b, TradeoffMeasure m, double v_max) {
  const double gamma = kTwoPi / b;
  if (m == TradeoffMeasure::Mean) {
    if (v_max <= 0.0) return gamma;
    return b == 2 ? kTwoPi / 3.0 : gamma * 0.5;
  }
  const double v = std::min(v_max, b == 2 ? gamma / 3.0 : gamma * 0.5);
  return gamma - std::max(v, 0.0);
}

}  // namespace

TradeoffMeasure parse_measure(std::string_view name) {
  if (name == "max") return TradeoffMeasure::Max;
  if (name == "mean") return TradeoffMeasure::Mean;
  throw Error(ErrorCode::InvalidInput, "unknown measure '" + std::string(name) + "'");
}

const char* to_string(TradeoffMeasure m) {
  return m == TradeoffMeasure::Max ? "max" : "mean";
}

double measure_max(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidInput, "measure of an empty list");
  return *std::max_element(values.begin(), values.end());
}

double measure_mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidInput, "measure of an empty list");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double apply_measure(TradeoffMeasure m, std::span<const double> values) {
  return m == TradeoffMeasure::Max ? measure_max(values) : measure_mean(values);
}

std::pair<TradeoffPoint, TradeoffPoint> tradeoff_endpoints(int b) {
  require_beams(b);
  const double gamma = kTwoPi / b;
  return {{gamma, gamma, true}, {1.5 * gamma, 0.5 * gamma, true}};
}

TradeoffPoint design_tradeoff_point(const BeamDesign& design, TradeoffMeasure m) {
  std::vector<double> sb;
  for (const Arc& a : design.beams()) sb.push_back(a.measure());
  std::vector<double> tb;
  for (const ComponentBeam& cb : component_beams(design)) tb.push_back(cb.region.measure());
  return {apply_measure(m, sb), apply_measure(m, tb), false};
}

double symmetric_family_lambda(int b, TradeoffMeasure m, double phi_max) {
  require_beams(b);
  const double gamma = kTwoPi / b;
  if (!(phi_max >= gamma - kGeoEps)) {
    throw Error(ErrorCode::Infeasible, "b beams cannot cover the domain with SB measure below 2pi/b");
  }
  return family_lambda(b, m, phi_max - gamma);
}

TradeoffFront::TradeoffFront(int b, int n)
    : b_(b), n_(n),
      max_front_(static_cast<std::size_t>(n) + 1, kInf),
      mean_front_(2 * static_cast<std::size_t>(n) + 1, kInf) {}

double TradeoffFront::lambda_at(TradeoffMeasure m, double phi) const {
  const double step = kTwoPi / n_;
  const std::vector<double>& front = m == TradeoffMeasure::Max ? max_front_ : mean_front_;
  const double scale = m == TradeoffMeasure::Max ? 1.0 : static_cast<double>(b_);
  const double key = std::floor(scale * phi / step + kSlack);
  if (key < 0.0) return kInf;
  const auto k = std::min(static_cast<std::size_t>(key), front.size() - 1);
  return front[k];
}

double tradeoff_grid_cost(int b, int n) {
  // Compositions of n into 2b nonnegative parts: C(n + 2b - 1, 2b - 1).
  const int k = 2 * b - 1;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n + i) / i;
  return c;
}

TradeoffFront tradeoff_grid_search(int b, int n, double budget) {
  require_beams(b);
  if (n < 2 * b) throw Error(ErrorCode::InvalidResolution, "grid too coarse for b beams");
  const double cost = tradeoff_grid_cost(b, n);
  if (cost > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                "trade-off grid search needs " + std::to_string(cost) + " evaluations");
  }

  TradeoffFront front(b, n);
  const int parts = 2 * b;
  const double step = kTwoPi / n;
  // Smallest lambda_max (in steps) per max SB width, and most component
  // beams per total SB width.
  std::vector<int> best_max(static_cast<std::size_t>(n) + 1, n + 1);
  std::vector<int> most_cbs(2 * static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> g(static_cast<std::size_t>(parts), 0);
  std::uint64_t visited = 0;

  // g[2i] overlaps beams i-1 and i, g[2i+1] is covered by beam i alone.
  // Beam i is complete once g[2i+2] is set; beam b-1 closes on g[0].
  struct Acc {
    int sb_max;
    int tb_max;
    int cbs;
    int overlaps;
  };
  auto record = [&](Acc a) {
    ++visited;
    int& bm = best_max[static_cast<std::size_t>(a.sb_max)];
    bm = std::min(bm, a.tb_max);
    int& mc = most_cbs[static_cast<std::size_t>(n + a.overlaps)];
    mc = std::max(mc, a.cbs);
  };
  // The last two gaps (overlap o of beams b-2, b-1 and primary left - o)
  // close both remaining beams.
  auto close = [&](int left, Acc a) {
    const int before = g[static_cast<std::size_t>(parts - 4)] + g[static_cast<std::size_t>(parts - 3)];
    const int wrap = left + g[0];
    if (wrap == 0) return;
    for (int o = 0; o <= left; ++o) {
      const int prim = left - o;
      const int w = before + o;
      if (w == 0) continue;
      Acc next = a;
      next.sb_max = std::max({next.sb_max, w, wrap});
      next.tb_max = std::max(next.tb_max, prim);
      next.cbs += prim > 0;
      next.overlaps += o;
      if (b == 2) {
        next.tb_max = std::max(next.tb_max, g[0] + o);
        next.cbs += g[0] + o > 0;
      } else {
        next.tb_max = std::max(next.tb_max, o);
        next.cbs += o > 0;
      }
      record(next);
    }
  };
  auto recurse = [&](auto&& self, int part, int left, Acc a) -> void {
    if (part == parts - 2) {
      close(left, a);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      g[static_cast<std::size_t>(part)] = v;
      Acc next = a;
      if (part % 2 == 1 || b > 2) {
        next.tb_max = std::max(next.tb_max, v);
        next.cbs += v > 0;
      }
      if (part % 2 == 0) {
        next.overlaps += v;
        if (part >= 2) {
          const int w = g[static_cast<std::size_t>(part - 2)] +
                        g[static_cast<std::size_t>(part - 1)] + v;
          if (w == 0) continue;
          next.sb_max = std::max(next.sb_max, w);
        }
      }
      self(self, part + 1, left - v, next);
    }
  };
  recurse(recurse, 0, n, Acc{0, 0, 0, 0});

  double run = kInf;
  for (std::size_t k = 0; k < best_max.size(); ++k) {
    if (best_max[k] <= n) run = std::min(run, best_max[k] * step);
    front.max_front_[k] = run;
  }
  run = kInf;
  for (std::size_t k = 0; k < most_cbs.size(); ++k) {
    if (most_cbs[k] > 0) run = std::min(run, kTwoPi / most_cbs[k]);
    front.mean_front_[k] = run;
  }
  front.evaluated_ = visited;
  return front;
}

bool front_agrees(const TradeoffFront& front, TradeoffMeasure m, const TradeoffPoint& point) {
  const double step = kTwoPi / front.grid();
  const double tol = step + kSlack;
  const bool reachable = front.lambda_at(m, point.phi_measure + step) <= point.lambda_measure + tol;
  const bool not_beaten = point.lambda_measure <= front.lambda_at(m, point.phi_measure) + tol;
  return reachable && not_beaten;
}

std::vector<TradeoffPoint> tradeoff_curve(int b, TradeoffMeasure m, int samples,
                                          const TradeoffFront* cross_check) {
  require_beams(b);
  if (samples < 2) throw Error(ErrorCode::InvalidInput, "a curve needs at least 2 samples");
  if (cross_check != nullptr && cross_check->beams() != b) {
    throw Error(ErrorCode::InvalidInput, "cross-check front was computed for another b");
  }
  const double gamma = kTwoPi / b;
  const double half = 0.5 * gamma;
  std::vector<TradeoffPoint> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double v = k == samples - 1 ? half : half * k / (samples - 1);
    TradeoffPoint pt{gamma + v, family_lambda(b, m, v), false};
    if (k == 0 || (k == samples - 1 && b > 2)) {
      pt.optimal = true;
    } else if (cross_check != nullptr) {
      pt.optimal = front_agrees(*cross_check, m, pt);
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace tulipba
