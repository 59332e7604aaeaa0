// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include "tulipba/objective.hpp"

#include <cmath>

#include "tulipba/error.hpp"

namespace tulipba {

ObjectiveContext::ObjectiveContext(CbTable table, std::vector<double> masses, PolicySpec policy)
    : table_(std::move(table)), masses_(std::move(masses)), policy_(policy) {
  if (masses_.size() != table_.sets.size() || table_.widths.size() != table_.sets.size()) {
    throw Error(ErrorCode::InvalidInput, "one mass and width per component beam required");
  }
  double covered = 0.0;
  for (double w : table_.widths) covered += w;
  if (std::abs(covered - kTwoPi) > 1e-9) {
    throw Error(ErrorCode::NotCovering, "scanning beams do not cover the angular domain");
  }
}

ObjectiveContext ObjectiveContext::from_cbs(std::span<const ComponentBeam> cbs,
                                            const AoDPdf& pdf, PolicySpec policy) {
  std::vector<double> masses;
  masses.reserve(cbs.size());
  for (const ComponentBeam& cb : cbs) masses.push_back(pdf.mass(cb.region));
  return {CbTable::from(cbs), std::move(masses), policy};
}

ObjectiveContext ObjectiveContext::from_design(const BeamDesign& design, const AoDPdf& pdf,
                                               PolicySpec policy) {
  return from_cbs(component_beams(design), pdf, policy);
}

double p_of_A(const ObjectiveContext& ctx, PositivitySet target) {
  if (target.size() > 24) {
    throw Error(ErrorCode::CombinatorialLimit, "positivity set too large for inclusion-exclusion");
  }
  const CbTable& table = ctx.table();
  // Component beams inside A; the others never contribute.
  std::uint64_t inside_sets[128];
  double inside_mass[128];
  std::size_t n = 0;
  for (std::size_t k = 0; k < table.sets.size() && n < 128; ++k) {
    if (table.sets[k].subset_of(target)) {
      inside_sets[n] = table.sets[k].bits();
      inside_mass[n] = ctx.masses()[k];
      ++n;
    }
  }

  const std::uint64_t a = target.bits();
  const int a_size = target.size();
  double total = 0.0;
  for (std::uint64_t sub = a; sub != 0; sub = (sub - 1) & a) {
    double g = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if ((inside_sets[k] & ~sub) == 0) g += inside_mass[k];
    }
    const double term = std::pow(g, ctx.paths());
    total += ((a_size - std::popcount(sub)) % 2 == 0) ? term : -term;
  }
  if (total < -kProbEps) {
    throw Error(ErrorCode::NumericalInstability,
                "negative probability for " + target.label() + "; component masses are broken");
  }
  return total;
}

Evaluation evaluate(const ObjectiveContext& ctx) {
  Evaluation out{0.0, {}};
  for (PositivitySet a : achievable_sets(ctx.table(), ctx.paths())) {
    const double prob = p_of_A(ctx, a);
    const double width = tb_width(ctx.policy(), ctx.table(), a);
    out.terms.push_back({a, prob, width});
    out.lambda_bar += prob * width;
  }
  return out;
}

double lambda_bar(const ObjectiveContext& ctx) {
  double acc = 0.0;
  for (PositivitySet a : achievable_sets(ctx.table(), ctx.paths())) {
    acc += p_of_A(ctx, a) * tb_width(ctx.policy(), ctx.table(), a);
  }
  return acc;
}

}  // namespace tulipba
