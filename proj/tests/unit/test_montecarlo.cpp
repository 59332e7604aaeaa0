// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "tulipba/error.hpp"
#include "tulipba/montecarlo.hpp"
#include "tulipba/objective.hpp"

using namespace tulipba;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Io;
}

SimOptions options(std::uint64_t trials, std::uint64_t seed, int threads = 1) {
  SimOptions o;
  o.trials = trials;
  o.seed = seed;
  o.threads = threads;
  return o;
}

}  // namespace

TEST_CASE("equal tiling under SD") {
  const BeamDesign es = testing::es_design(5);
  const PolicySpec sd(PolicyKind::SD, 2);
  const SimReport r = simulate(es, sd, AoDPdf::uniform(), options(1'000'000, 11));
  const double analytic = kTwoPi / 5 * 1.8;
  CHECK(r.trials == 1'000'000);
  CHECK(std::abs(r.empirical_lambda_bar - analytic) < 4.0 * r.std_error);
  CHECK(r.containment_violations == 0);
  std::uint64_t total = 0;
  for (const auto& [a, c] : r.counts) total += c;
  CHECK(total == r.trials);
  CHECK(std::abs(r.frequency(IndexSet::of({2})) - 0.04) < 4.0 * std::sqrt(0.04 * 0.96 / 1e6));
  CHECK(std::abs(r.frequency(IndexSet::of({0, 4})) - 0.08) < 4.0 * std::sqrt(0.08 * 0.92 / 1e6));
}

TEST_CASE("single path frequencies are the component-beam masses") {
  std::mt19937_64 rng(3);
  const BeamDesign d = testing::random_tulip(4, rng).beams();
  const AoDPdf pdf = AoDPdf::truncated_normal(kPi, 1.0);
  const SimReport r = simulate(d, PolicySpec(PolicyKind::BF, 1), pdf, options(500'000, 2));
  const double n = 500'000;
  for (const auto& cb : component_beams(d)) {
    const double g = pdf.mass(cb.region);
    CHECK(std::abs(r.frequency(cb.index_set) - g) <= 4.0 * std::sqrt(g * (1 - g) / n) + 1e-12);
  }
  CHECK(r.containment_violations == 0);
}

TEST_CASE("GES three-beam BF against the analytic value") {
  const BeamDesign d = testing::ges_tiling({1.36, 1.93, 2.99}).beams();
  const PolicySpec bf(PolicyKind::BF, 2);
  const double analytic = lambda_bar(ObjectiveContext::from_design(d, AoDPdf::uniform(), bf));
  const SimReport r = simulate(d, bf, AoDPdf::uniform(), options(1'000'000, 99));
  CHECK(std::abs(r.empirical_lambda_bar - analytic) < 4.0 * r.std_error);
  CHECK(r.containment_violations == 0);
}

TEST_CASE("gain proxy") {
  CHECK(gain_proxy(kTwoPi) == Approx(1.0));
  CHECK(gain_proxy(kPi / 4) == Approx(8.0));
  CHECK(code_of([] { gain_proxy(0.0); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { gain_proxy(7.0); }) == ErrorCode::InvalidInput);

  const BeamDesign d = testing::es_design(4);
  const SimReport sd = simulate(d, PolicySpec(PolicyKind::SD, 2), AoDPdf::uniform(),
                                options(100'000, 1));
  const SimReport bf = simulate(d, PolicySpec(PolicyKind::BF, 2), AoDPdf::uniform(),
                                options(100'000, 1));
  CHECK(bf.mean_gain_proxy > sd.mean_gain_proxy);
  CHECK(bf.empirical_lambda_bar < sd.empirical_lambda_bar);
}

TEST_CASE("no containment violations on random designs") {
  std::mt19937_64 rng(55);
  const PolicyKind kinds[] = {PolicyKind::SD, PolicyKind::BF, PolicyKind::PSD, PolicyKind::PBF};
  for (int trial = 0; trial < 20; ++trial) {
    const int b = 2 + trial % 5;
    const BeamDesign d = trial % 2 ? BeamDesign(testing::random_tulip(b, rng).beams())
                                   : testing::random_covering_design(b, rng);
    for (PolicyKind k : kinds) {
      const SimReport r = simulate(d, PolicySpec(k, 2), AoDPdf::truncated_normal(2.0, 1.2),
                                   options(20'000, std::uint64_t(trial)));
      CHECK(r.containment_violations == 0);
    }
  }
}

TEST_CASE("reports are reproducible and thread independent") {
  const BeamDesign d = symmetric_tulip(4, 0.3).beams();
  const PolicySpec pol(PolicyKind::PBF, 2);
  SimOptions o = options(300'000, 1234, 1);
  o.record_trials = true;
  const SimReport a = simulate(d, pol, AoDPdf::uniform(), o);
  o.threads = 3;
  const SimReport b = simulate(d, pol, AoDPdf::uniform(), o);
  CHECK(a.empirical_lambda_bar == b.empirical_lambda_bar);
  CHECK(a.std_error == b.std_error);
  CHECK(a.counts == b.counts);
  REQUIRE(a.records.size() == 300'000);
  REQUIRE(b.records.size() == a.records.size());
  for (std::size_t k = 0; k < a.records.size(); k += 997) {
    CHECK(a.records[k].trial == k);
    CHECK(a.records[k].set == b.records[k].set);
    CHECK(a.records[k].width == b.records[k].width);
  }
  o.seed = 1235;
  CHECK(simulate(d, pol, AoDPdf::uniform(), o).empirical_lambda_bar != a.empirical_lambda_bar);
}

TEST_CASE("simulation errors") {
  const BeamDesign gap({Arc::normalized(0.0, 3.0), Arc::normalized(3.5, 6.0)});
  CHECK(code_of([&] {
          simulate(gap, PolicySpec(PolicyKind::SD, 2), AoDPdf::uniform(), options(10, 1));
        }) == ErrorCode::NotCovering);
  CHECK(code_of([] {
          simulate(testing::es_design(3), PolicySpec(PolicyKind::SD, 2), AoDPdf::uniform(),
                   options(0, 1));
        }) == ErrorCode::InvalidInput);
}
