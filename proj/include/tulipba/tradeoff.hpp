// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// Scanning-beam versus transmission-beam width trade-off for a single path.
//
// With one path every policy decodes feedback A to omega_A, so the TB widths
// of a design are exactly its component-beam widths. A measure mu maps the SB
// widths eta_i and the TB widths to one number each.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tulipba/geometry.hpp"

namespace tulipba {

enum class TradeoffMeasure { Max, Mean };

/// Parses "max" | "mean".
TradeoffMeasure parse_measure(std::string_view name);
const char* to_string(TradeoffMeasure m);

/// Throw ErrorCode::InvalidInput on an empty list.
double measure_max(std::span<const double> values);
double measure_mean(std::span<const double> values);
double apply_measure(TradeoffMeasure m, std::span<const double> values);

struct TradeoffPoint {
  double phi_measure;
  double lambda_measure;
  bool optimal = false;  // confirmed by exhaustive search, else an upper bound
};

/// ((gamma, gamma), (3 gamma / 2, gamma / 2)) with gamma = 2pi / b.
std::pair<TradeoffPoint, TradeoffPoint> tradeoff_endpoints(int b);

/// (mu of SB widths, mu of component-beam widths) of a design.
TradeoffPoint design_tradeoff_point(const BeamDesign& design, TradeoffMeasure m);

/// Smallest lambda measure over symmetric tulips (overlap v, primary
/// gamma - v) whose SB measure is at most phi_max. Throws
/// ErrorCode::Infeasible when phi_max < gamma.
double symmetric_family_lambda(int b, TradeoffMeasure m, double phi_max);

/// Exhaustive grid search over all tulips whose 2b boundary gaps are
/// multiples of 2pi/n: the smallest lambda measure reachable for each SB
/// measure.
class TradeoffFront {
 public:
  TradeoffFront(int b, int n);

  int beams() const { return b_; }
  int grid() const { return n_; }
  std::uint64_t evaluated() const { return evaluated_; }
  /// Smallest lambda measure among grid tulips with SB measure <= phi;
  /// +inf when none qualifies.
  double lambda_at(TradeoffMeasure m, double phi) const;

 private:
  friend TradeoffFront tradeoff_grid_search(int b, int n, double budget);

  int b_;
  int n_;
  std::uint64_t evaluated_ = 0;
  std::vector<double> max_front_;   // by max SB width in steps, prefix-minimised
  std::vector<double> mean_front_;  // by total SB width in steps, prefix-minimised
};

/// Number of gap compositions tradeoff_grid_search visits.
double tradeoff_grid_cost(int b, int n);

/// Throws ErrorCode::BudgetExceeded when the enumeration exceeds `budget`.
TradeoffFront tradeoff_grid_search(int b, int n, double budget = 4e9);

/// `samples` points from phi = gamma to 3 gamma / 2 over the symmetric
/// family. Endpoints are always optimal; interior points are marked optimal
/// only when `cross_check` is given and agrees within one grid step.
std::vector<TradeoffPoint> tradeoff_curve(int b, TradeoffMeasure m, int samples,
                                          const TradeoffFront* cross_check = nullptr);

/// True when the curve value at phi agrees with the front within one grid
/// step of slack in both directions.
bool front_agrees(const TradeoffFront& front, TradeoffMeasure m, const TradeoffPoint& point);

}  // namespace tulipba
