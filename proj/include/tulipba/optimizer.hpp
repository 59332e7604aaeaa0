// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// Greedy sliding-window search over tulip boundary points on a discrete
// angular grid, with multi-restart, plus an exhaustive oracle for small
// instances.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tulipba/aod.hpp"
#include "tulipba/error.hpp"
#include "tulipba/objective.hpp"
#include "tulipba/policy.hpp"
#include "tulipba/tulip.hpp"

namespace tulipba {

/// N equally spaced angles k * 2pi/N, k in [0, N).
struct GroundSet {
  int n;

  double step() const { return kTwoPi / n; }
  double angle(long k) const { return static_cast<double>(k) * step(); }
};

struct OptimizerConfig {
  int grid = 1000;
  int restarts = 20;
  std::uint64_t seed = 0;
  long max_iterations = 1'000'000;  // accepted moves per restart
  PolicySpec policy{PolicyKind::SD, 2};
  AoDPdf pdf = AoDPdf::uniform();
  int threads = 0;  // 0: hardware concurrency
};

/// 2b grid indices z_0 <= ... <= z_{2b-1} <= z_0 + N with z_0 in [0, N).
struct Solution {
  std::vector<long> z;
  double lambda_bar = 0.0;

  int beams() const { return static_cast<int>(z.size() / 2); }
  TulipDesign design(const GroundSet& ground) const;
};

/// lambda-bar of grid solutions, with the prior's cumulative mass tabulated
/// on the grid so that component-beam masses are exact cell sums.
class GridObjective {
 public:
  GridObjective(GroundSet ground, const AoDPdf& pdf, PolicySpec policy);

  const GroundSet& ground() const { return ground_; }
  const PolicySpec& policy() const { return policy_; }
  ObjectiveContext context(std::span<const long> z) const;
  double operator()(std::span<const long> z) const;

 private:
  double cumulative(long k) const;

  GroundSet ground_;
  PolicySpec policy_;
  std::vector<double> cdf_;  // mass of [0, k * step), k = 0..N
};

/// True when every beam has positive width and the points are circularly
/// ordered on the grid.
bool valid_solution(std::span<const long> z, int n);

enum class Direction { Forward, Backward };

struct WindowMove {
  int first;
  int last;  // inclusive, first <= last
  Direction direction;
};

/// Slides z_first..z_last one grid step. Returns false (z untouched) when the
/// move would break circular order or empty a beam.
bool apply_move(std::vector<long>& z, int n, const WindowMove& move);

/// All (first, last, direction) tuples over 2b points.
std::vector<WindowMove> all_moves(int b);

struct ModifyResult {
  bool stable;
  Solution solution;
  long evaluations;
};

/// One shuffled pass over all window moves. Returns the first strictly
/// improving neighbour, or stable = true when none improves.
ModifyResult modify_sol(const Solution& current, const GridObjective& objective, Rng& rng);

struct RestartTrace {
  int restart;
  std::vector<double> lambda_trace;  // initial value, then every accepted move
  Solution best;
  long evaluations;
};

struct OptimizerResult {
  double lambda_bar;
  TulipDesign design;
  Solution solution;
  int best_restart;
  std::vector<RestartTrace> restarts;
};

/// Raised when a restart exceeds max_iterations; carries the best solution
/// seen so far across all restarts.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, Solution best)
      : Error(ErrorCode::NonConvergence, what), best_(std::move(best)) {}
  const Solution& best() const { return best_; }

 private:
  Solution best_;
};

/// Uniformly random initial solution: 2b distinct sorted grid points.
Solution random_solution(int b, const GridObjective& objective, Rng& rng);

/// Runs one restart from `start` until Modify-Sol reports stability.
RestartTrace run_restart(int restart, Solution start, const GridObjective& objective, Rng& rng,
                         long max_iterations);

/// Best of cfg.restarts independent restarts; ties go to the lowest restart.
OptimizerResult greedy_sa(const OptimizerConfig& cfg, int b);

struct BruteForceResult {
  double lambda_bar;
  Solution solution;
  TulipDesign design;
  std::uint64_t evaluated;
};

/// Number of candidate solutions brute_force would evaluate.
double brute_force_cost(int b, int n, bool rotation_invariant);

/// Global grid optimum by exhaustive enumeration of circularly ordered
/// boundary multisets. A uniform prior is rotation invariant, so the first
/// point is pinned to 0. Throws ErrorCode::BudgetExceeded when the
/// enumeration would exceed `budget` candidates.
BruteForceResult brute_force(int b, PolicySpec policy, const AoDPdf& pdf, int n,
                             double budget = 5e7);

}  // namespace tulipba
