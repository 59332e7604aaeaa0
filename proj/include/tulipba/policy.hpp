// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// Feedback generation and per-feedback decoding for the SD, BF, 2-SD and
// 2-BF policies.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tulipba/geometry.hpp"

namespace tulipba {

enum class PolicyKind { SD, BF, PSD, PBF };

/// Decoding policy plus the number of resolvable paths p.
///
/// With p = 1 every policy decodes a positivity set A to the single
/// component beam omega_A. PSD and PBF are defined for p <= 2 only.
class PolicySpec {
 public:
  /// Throws ErrorCode::InvalidPolicy on p < 1 or PSD/PBF with p > 2.
  PolicySpec(PolicyKind kind, int paths);

  /// Parses "sd" | "bf" | "2sd" | "2bf".
  static PolicySpec parse(std::string_view name, int paths);

  PolicyKind kind() const { return kind_; }
  int paths() const { return paths_; }
  std::string name() const;
  /// True when decoding guarantees every path lies in the region
  /// (SD, 2-SD, and any policy at p = 1); otherwise at least one.
  bool covers_all_paths() const;

 private:
  PolicyKind kind_;
  int paths_;
};

using PositivitySet = IndexSet;

/// Index-set and width view of a component-beam list.
struct CbTable {
  std::vector<IndexSet> sets;
  std::vector<double> widths;

  static CbTable from(std::span<const ComponentBeam> cbs);
  int size() const { return static_cast<int>(sets.size()); }
};

/// W_A: unordered pairs {C, C'} of component beams with C | C' = A.
/// Members are positions into the component-beam list; first <= second.
struct PairFamily {
  PositivitySet target;
  std::vector<std::pair<int, int>> pairs;

  /// V_A: distinct positions appearing in any pair, ascending.
  std::vector<int> members() const;
};

/// Largest |V_A| the 2-BF minimum-cover search will enumerate.
inline constexpr int kMaxPairMembers = 24;

/// A = { i : some aod lies in beam i }. Throws ErrorCode::InvalidAngle on
/// non-finite angles and ErrorCode::InternalConsistency when A is empty.
PositivitySet feedback(const BeamDesign& design, std::span<const double> aods);

PairFamily enumerate_pairs(const CbTable& table, PositivitySet target);
PairFamily enumerate_pairs(std::span<const ComponentBeam> cbs, PositivitySet target);

/// Every A produced with positive probability by some placement of p paths,
/// sorted ascending.
std::vector<PositivitySet> achievable_sets(const CbTable& table, int paths);
std::vector<PositivitySet> achievable_sets(std::span<const ComponentBeam> cbs, int paths);

/// Uncertainty region by set algebra on the scanning beams.
///
/// Throws ErrorCode::NoCandidate when A cannot be produced by the
/// component beams and ErrorCode::CombinatorialLimit when |V_A| exceeds
/// kMaxPairMembers.
ArcSet uncertainty_region(const PolicySpec& policy, std::span<const ComponentBeam> cbs,
                          PositivitySet target);

/// lambda_P(A), computed from component-beam widths. Same errors as
/// uncertainty_region.
double tb_width(const PolicySpec& policy, const CbTable& table, PositivitySet target);
double tb_width(const PolicySpec& policy, std::span<const ComponentBeam> cbs,
                PositivitySet target);

}  // namespace tulipba
