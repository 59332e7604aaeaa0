// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "tulipba/aod.hpp"
#include "tulipba/error.hpp"

using namespace tulipba;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

ArcSet arc(double start, double end) { return ArcSet(Arc::normalized(start, end)); }

// Truncated-normal mass from the raw density by quadrature.
double quadrature_mass(double mu, double sigma, double lo, double hi) {
  auto f = [&](double x) { return testing::normal_density(x, mu, sigma); };
  const double z = testing::integrate(f, 0.0, kTwoPi);
  return testing::integrate(f, lo, hi) / z;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("uniform masses") {
  const AoDPdf u = AoDPdf::uniform();
  CHECK(u.mass(arc(0.0, kPi / 2)) == Approx(0.25).epsilon(1e-15));
  CHECK(u.mass(ArcSet::full()) == Approx(1.0).epsilon(1e-15));
  CHECK(u.mass(arc(6.0, 0.5)) == Approx((kTwoPi - 6.0 + 0.5) / kTwoPi));
  CHECK(u.mass(ArcSet()) == 0.0);
}

TEST_CASE("truncated normal against a quadrature oracle") {
  const AoDPdf tn = AoDPdf::truncated_normal(kPi, 1.0);
  CHECK(tn.mass(ArcSet::full()) == Approx(1.0).epsilon(1e-12));
  const double oracle = quadrature_mass(kPi, 1.0, kPi - 1.0, kPi + 1.0);
  CHECK(std::abs(tn.mass(arc(kPi - 1.0, kPi + 1.0)) - oracle) < 1e-10);

  const AoDPdf skew = AoDPdf::truncated_normal(0.7, 1.3);
  const double wrap = quadrature_mass(0.7, 1.3, 5.5, kTwoPi) + quadrature_mass(0.7, 1.3, 0.0, 0.4);
  CHECK(std::abs(skew.mass(arc(5.5, 0.4)) - wrap) < 1e-10);
  for (double x : {0.5, 2.0, 4.0}) {
    CHECK(std::abs(skew.cdf(x) - quadrature_mass(0.7, 1.3, 0.0, x)) < 1e-10);
  }
}

TEST_CASE("mixtures") {
  const AoDPdf u = AoDPdf::uniform();
  const AoDPdf tn = AoDPdf::truncated_normal(kPi, 1.0);
  const ArcSet r = arc(kPi - 1.0, kPi + 1.0);

  CHECK(mixture_of({tn}, {1.0}).mass(r) == Approx(tn.mass(r)).epsilon(1e-14));
  CHECK(mixture_of({u, u}, {0.3, 0.7}).mass(r) == Approx(2.0 / kTwoPi).epsilon(1e-14));

  const double oracle = quadrature_mass(kPi, 1.0, kPi - 1.0, kPi + 1.0);
  const AoDPdf half = mixture_of({u, tn}, {0.5, 0.5});
  CHECK(std::abs(half.mass(r) - (0.5 * 2.0 / kTwoPi + 0.5 * oracle)) < 1e-10);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const AoDPdf pw = AoDPdf::piecewise({0.0, 1.0, 4.0, kTwoPi},
                                      {0.1, 0.2, (1.0 - 0.1 - 0.6) / (kTwoPi - 4.0)});
  const AoDPdf mix = mixture_of({u, tn, pw}, {0.2, 0.5, 0.3});
  for (int k = 0; k < 200; ++k) {
    const ArcSet s = arc(angle(rng), angle(rng));
    const double expect = 0.2 * u.mass(s) + 0.5 * tn.mass(s) + 0.3 * pw.mass(s);
    CHECK(mix.mass(s) == Approx(expect).epsilon(1e-12));
  }

  CHECK(code_of([&] { mixture_of({u, tn}, {0.5, 0.6}); }) == ErrorCode::InvalidWeights);
  CHECK(code_of([&] { mixture_of({u, tn}, {1.0}); }) == ErrorCode::InvalidWeights);
  CHECK(code_of([&] { mixture_of({u, tn}, {1.5, -0.5}); }) == ErrorCode::InvalidWeights);
}

TEST_CASE("mass is additive and monotone") {
  const AoDPdf tn = AoDPdf::truncated_normal(2.0, 0.8);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int k = 0; k < 500; ++k) {
    const double a = angle(rng);
    const double len = angle(rng);
    const double cut = angle(rng) * len / kTwoPi;
    const ArcSet whole = ArcSet(Arc::from_length(a, len));
    const ArcSet left = ArcSet(Arc::from_length(a, cut));
    const ArcSet right = ArcSet(Arc::from_length(wrap_angle(a + cut), len - cut));
    CHECK(tn.mass(whole) == Approx(tn.mass(left) + tn.mass(right)).epsilon(1e-12));
    CHECK(tn.mass(left) <= tn.mass(whole) + 1e-15);
  }
}

TEST_CASE("sampling frequencies") {
  std::mt19937_64 rng(20260116);
  const int n = 1'000'000;
  const AoDPdf u = AoDPdf::uniform();
  const ArcSet r = arc(1.0, 2.5);
  int inside = 0;
  for (int k = 0; k < n; ++k) inside += r.contains(u.sample(rng)) ? 1 : 0;
  const double g = u.mass(r);
  CHECK(std::abs(inside / double(n) - g) < 4.0 * std::sqrt(g * (1 - g) / n));

  Rng a(3);
  Rng b(3);
  for (int k = 0; k < 100; ++k) CHECK(u.sample(a) == u.sample(b));

  const AoDPdf tn = AoDPdf::truncated_normal(kPi, 1.0);
  const ArcSet c = arc(kPi - 1.0, kPi + 1.0);
  const double gc = tn.mass(c);
  int hits = 0;
  for (int k = 0; k < n; ++k) {
    const double x = tn.sample(rng);
    REQUIRE(x > 0.0);
    REQUIRE(x < kTwoPi);
    hits += c.contains(x) ? 1 : 0;
  }
  CHECK(std::abs(hits / double(n) - gc) < 4.0 * std::sqrt(gc * (1 - gc) / n));

  const AoDPdf only_first =
      mixture_of({AoDPdf::piecewise({0.0, 1.0, kTwoPi}, {1.0, 0.0}), u}, {1.0, 0.0});
  for (int k = 0; k < 10'000; ++k) CHECK(only_first.sample(rng) < 1.0);
}

TEST_CASE("discretization") {
  const AoDPdf d4 = discretize(AoDPdf::uniform(), 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(d4.mass(ArcSet(Arc::from_length(k * kPi / 2, kPi / 2))) == Approx(0.25).epsilon(1e-15));
  }

  const AoDPdf tn = AoDPdf::truncated_normal(kPi, 1.0);
  const int n = 1000;
  const AoDPdf dn = discretize(tn, n);
  CHECK(std::abs(dn.mass(ArcSet::full()) - 1.0) < kProbEps);
  const auto& cells = std::get<PiecewiseConstantPdf>(dn.kind());
  REQUIRE(cells.densities.size() == static_cast<std::size_t>(n));
  double max_cell = 0.0;
  for (int k = 0; k < n; ++k) {
    const ArcSet cell(Arc::normalized(cells.breakpoints[k], cells.breakpoints[k + 1]));
    CHECK(dn.mass(cell) == Approx(tn.mass(cell)).epsilon(1e-9));
    max_cell = std::max(max_cell, tn.mass(cell));
  }
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int k = 0; k < 1000; ++k) {
    const ArcSet s = arc(angle(rng), angle(rng));
    CHECK(std::abs(dn.mass(s) - tn.mass(s)) <= max_cell);
  }

  CHECK(code_of([] { discretize(AoDPdf::uniform(), 1); }) == ErrorCode::InvalidResolution);
}

TEST_CASE("pdf construction errors") {
  CHECK(code_of([] { AoDPdf::truncated_normal(kPi, 0.0); }) == ErrorCode::InvalidPdf);
  CHECK(code_of([] { AoDPdf::truncated_normal(std::nan(""), 1.0); }) == ErrorCode::InvalidPdf);
  CHECK(code_of([] { AoDPdf::piecewise({0.0, kTwoPi}, {0.5}); }) == ErrorCode::InvalidPdf);
  CHECK(code_of([] { AoDPdf::piecewise({0.0, 3.0, kTwoPi}, {1.0}); }) == ErrorCode::InvalidPdf);
  CHECK(code_of([] { AoDPdf::piecewise({0.0, 4.0, 3.0, kTwoPi}, {0.1, 0.1, 0.1}); }) ==
        ErrorCode::InvalidPdf);
  CHECK(code_of([] { AoDPdf::piecewise({0.0, 1.0}, {1.0}); }) == ErrorCode::InvalidPdf);
}
