// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// Exact feedback-set probabilities P_A and the expected transmission-beam
// width lambda-bar.

#pragma once

#include <span>
#include <vector>

#include "tulipba/aod.hpp"
#include "tulipba/geometry.hpp"
#include "tulipba/policy.hpp"

namespace tulipba {

/// Component beams of a covering design together with their masses
/// g(omega_C) under the single-user prior.
class ObjectiveContext {
 public:
  /// Throws ErrorCode::NotCovering when the widths do not sum to 2pi and
  /// ErrorCode::InvalidInput on mismatched sizes.
  ObjectiveContext(CbTable table, std::vector<double> masses, PolicySpec policy);

  static ObjectiveContext from_cbs(std::span<const ComponentBeam> cbs, const AoDPdf& pdf,
                                   PolicySpec policy);
  static ObjectiveContext from_design(const BeamDesign& design, const AoDPdf& pdf,
                                      PolicySpec policy);

  const CbTable& table() const { return table_; }
  std::span<const double> masses() const { return masses_; }
  const PolicySpec& policy() const { return policy_; }
  int paths() const { return policy_.paths(); }

 private:
  CbTable table_;
  std::vector<double> masses_;
  PolicySpec policy_;
};

/// Probability that the p i.i.d. paths produce positivity set A:
///   sum over nonempty B subset of A of (-1)^{|A|-|B|} G(B)^p,
/// with G(B) the mass of the component beams whose index sets lie in B.
/// Throws ErrorCode::NumericalInstability if the result is below -kProbEps.
double p_of_A(const ObjectiveContext& ctx, PositivitySet target);

struct FeedbackTerm {
  PositivitySet set;
  double probability;
  double width;
};

struct Evaluation {
  double lambda_bar;
  std::vector<FeedbackTerm> terms;  // one per achievable A, ascending
};

Evaluation evaluate(const ObjectiveContext& ctx);

/// Sum over achievable A of tb_width(A) * P_A.
double lambda_bar(const ObjectiveContext& ctx);

}  // namespace tulipba
