// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "tulipba/geometry.hpp"
#include "tulipba/tulip.hpp"

namespace tulipba::testing {

inline BeamDesign es_design(int b) {
  std::vector<Arc> arcs;
  for (int i = 0; i < b; ++i) arcs.push_back(Arc::from_length(kTwoPi * i / b, kTwoPi / b));
  return BeamDesign(std::move(arcs));
}

/// Last arc absorbs the rounding so the lengths tile the circle.
inline TulipDesign ges_tiling(std::vector<double> lengths) {
  double used = 0.0;
  for (std::size_t i = 0; i + 1 < lengths.size(); ++i) used += lengths[i];
  lengths.back() = kTwoPi - used;
  return ges_design(lengths);
}

/// Tulip from 2b sorted uniform points; all CBs nonzero with probability 1.
inline TulipDesign random_tulip(int b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (;;) {
    std::vector<double> z(2 * static_cast<std::size_t>(b));
    for (double& v : z) v = u(rng);
    std::sort(z.begin(), z.end());
    bool separated = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const double next = k + 1 < z.size() ? z[k + 1] : z[0] + kTwoPi;
      separated = separated && next - z[k] > 1e-6;
    }
    if (separated) return from_boundaries(z);
  }
}

/// b contiguous beams with random starts and widths whose union is the
/// whole circle.
inline BeamDesign random_covering_design(int b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> start(0.0, kTwoPi);
  std::uniform_real_distribution<double> width(0.05, kTwoPi);
  for (;;) {
    std::vector<Arc> arcs;
    for (int i = 0; i < b; ++i) arcs.push_back(Arc::from_length(start(rng), width(rng)));
    BeamDesign d(std::move(arcs));
    if (coverage_check(d)) return d;
  }
}

/// b contiguous beams with random starts and widths, not necessarily
/// covering.
inline BeamDesign random_design(int b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> start(0.0, kTwoPi);
  std::uniform_real_distribution<double> width(0.05, 3.0);
  std::vector<Arc> arcs;
  for (int i = 0; i < b; ++i) arcs.push_back(Arc::from_length(start(rng), width(rng)));
  return BeamDesign(std::move(arcs));
}

/// Adaptive Simpson quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
  auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
          int depth) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(lo, mid, flo, flm, fmid);
    const double right = simpson(mid, hi, fmid, frm, fhi);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
      return left + right + (left + right - whole) / 15.0;
    }
    return rec(lo, mid, flo, flm, fmid, left, eps / 2, depth - 1) +
           rec(mid, hi, fmid, frm, fhi, right, eps / 2, depth - 1);
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 50);
}

/// Untruncated normal density.
inline double normal_density(double x, double mu, double sigma) {
  const double t = (x - mu) / sigma;
  return std::exp(-0.5 * t * t) / (sigma * std::sqrt(kTwoPi));
}

}  // namespace tulipba::testing
