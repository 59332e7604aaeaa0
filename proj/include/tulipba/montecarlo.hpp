// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// Monte Carlo validation: draw p i.i.d. AoDs per trial, form the feedback,
// decode it with a policy and accumulate the transmission-beam width.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tulipba/aod.hpp"
#include "tulipba/geometry.hpp"
#include "tulipba/policy.hpp"

namespace tulipba {

struct TrialRecord {
  std::uint64_t trial;
  PositivitySet set;
  double width;
};

struct SimOptions {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  int threads = 0;             // 0: hardware concurrency
  bool record_trials = false;  // fill SimReport::records
};

struct SimReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double empirical_lambda_bar = 0.0;
  double std_error = 0.0;
  double mean_gain_proxy = 0.0;
  std::map<PositivitySet, std::uint64_t> counts;
  /// Trials whose region misses every path, or (for policies that promise
  /// all paths) misses any path.
  std::uint64_t containment_violations = 0;
  std::vector<TrialRecord> records;

  double frequency(PositivitySet a) const;
};

/// Trials are split into fixed chunks, each with its own generator seeded
/// from (seed, chunk); the report does not depend on the thread count.
/// Throws ErrorCode::NotCovering on a design that leaves a gap and
/// ErrorCode::InvalidInput on zero trials.
SimReport simulate(const BeamDesign& design, const PolicySpec& policy, const AoDPdf& pdf,
                   const SimOptions& options);

/// Sectored-model relative gain 2pi / width of a transmission beam. Throws
/// ErrorCode::InvalidInput unless width is in (0, 2pi].
double gain_proxy(double width);

}  // namespace tulipba
