// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include "tulipba/tulip.hpp"

#include <algorithm>
#include <cmath>

#include "tulipba/error.hpp"
#include "tulipba/policy.hpp"

namespace tulipba {
namespace {

constexpr double kOrderEps = 1e-9;

}  // namespace

BeamDesign TulipDesign::beams() const {
  std::vector<Arc> arcs;
  arcs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) arcs.push_back(Arc::from_length(x[i], y[i] - x[i]));
  return BeamDesign(std::move(arcs));
}

double EffCBSet::total_measure() const {
  double m = 0.0;
  for (const Arc& a : primary) m += a.measure();
  for (const Arc& a : overlap) m += a.measure();
  return m;
}

std::vector<Violation> validate(const TulipDesign& d) {
  std::vector<Violation> out;
  const int b = d.size();
  if (b < 2 || d.y.size() != d.x.size()) {
    out.push_back({"size", b});
    return out;
  }
  auto x = [&](int i) { return d.x[static_cast<std::size_t>(i)]; };
  auto y = [&](int i) { return d.y[static_cast<std::size_t>(i)]; };

  if (!(x(0) >= 0.0 && x(0) < kTwoPi)) out.push_back({"start-range", 0});
  for (int i = 0; i + 1 < b; ++i) {
    if (x(i + 1) < x(i) - kOrderEps) out.push_back({"start-order", i});
  }
  for (int i = 0; i + 1 < b; ++i) {
    if (y(i + 1) < y(i) - kOrderEps) out.push_back({"end-order", i});
  }
  for (int i = 0; i + 2 < b; ++i) {
    if (y(i) < x(i + 1) - kOrderEps || y(i) > x(i + 2) + kOrderEps) {
      out.push_back({"interleave", i});
    }
  }
  if (y(b - 2) < x(b - 1) - kOrderEps || y(b - 2) > x(0) + kTwoPi + kOrderEps) {
    out.push_back({"interleave", b - 2});
  }
  if (y(b - 1) > x(1) + kTwoPi + kOrderEps) out.push_back({"wrap-end", b - 1});
  if (y(b - 1) < x(0) + kTwoPi - kOrderEps) out.push_back({"wrap-cover", b - 1});
  for (int i = 0; i < b; ++i) {
    if (y(i) - x(i) <= kGeoEps) out.push_back({"beam-width", i});
  }
  return out;
}

TulipDesign from_boundaries(const std::vector<double>& z) {
  const std::size_t n = z.size();
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorCode::InvalidBoundaries, "a tulip needs an even number (>= 4) of boundaries");
  }
  for (double v : z) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidBoundaries, "boundaries must be finite");
  }
  auto forward = [](double from, double to) {
    double g = std::fmod(to - from, kTwoPi);
    if (g < 0.0) g += kTwoPi;
    if (g > kTwoPi - kOrderEps) g = 0.0;
    return g;
  };
  std::vector<double> u(2 * n);
  u[0] = z[0] - kTwoPi * std::floor(z[0] / kTwoPi);
  for (std::size_t k = 1; k < n; ++k) u[k] = u[k - 1] + forward(z[k - 1], z[k]);
  const double turn = u[n - 1] + forward(z[n - 1], z[0]) - u[0];
  if (std::abs(turn - kTwoPi) > 1e-9) {
    throw Error(ErrorCode::InvalidBoundaries, "boundaries are not circularly ordered");
  }
  for (std::size_t k = n; k < 2 * n; ++k) u[k] = u[k - n] + kTwoPi;

  const std::size_t b = n / 2;
  TulipDesign d;
  d.x.resize(b);
  d.y.resize(b);
  for (std::size_t i = 0; i < b; ++i) {
    d.x[i] = u[2 * i];
    d.y[i] = u[2 * i + 3];
  }
  return d;
}

std::vector<double> to_boundaries(const TulipDesign& d) {
  const std::size_t b = d.x.size();
  std::vector<double> z(2 * b);
  for (std::size_t i = 0; i < b; ++i) {
    z[2 * i] = d.x[i];
    z[2 * i + 1] = i == 0 ? d.y[b - 1] - kTwoPi : d.y[i - 1];
  }
  return z;
}

EffCBSet to_cbset(const TulipDesign& d) {
  const std::size_t b = d.x.size();
  EffCBSet c;
  for (std::size_t i = 0; i < b; ++i) {
    const double prev_end = i == 0 ? d.y[b - 1] - kTwoPi : d.y[i - 1];
    const double next_start = i + 1 == b ? d.x[0] + kTwoPi : d.x[i + 1];
    // Phi_i minus its neighbours, and Phi_i intersected with Phi_{i+1}.
    c.primary.push_back(Arc::from_length(prev_end, next_start - prev_end));
    c.overlap.push_back(Arc::from_length(next_start, d.y[i] - next_start));
  }
  return c;
}

const char* to_string(DesignClass c) {
  switch (c) {
    case DesignClass::ES: return "es";
    case DesignClass::GES: return "ges";
    case DesignClass::Tulip: return "tulip";
  }
  return "?";
}

DesignClass classify(const TulipDesign& d, double tolerance) {
  const EffCBSet c = to_cbset(d);
  for (const Arc& a : c.overlap) {
    if (a.measure() > tolerance) return DesignClass::Tulip;
  }
  auto [lo, hi] = std::minmax_element(c.primary.begin(), c.primary.end(),
                                      [](const Arc& a, const Arc& b) {
                                        return a.measure() < b.measure();
                                      });
  return hi->measure() - lo->measure() <= tolerance ? DesignClass::ES : DesignClass::GES;
}

int count_feedback_sequences(const BeamDesign& design, int paths) {
  return static_cast<int>(achievable_sets(component_beams(design), paths).size());
}

TulipDesign symmetric_tulip(int b, double overlap, double rotation) {
  const double gamma = kTwoPi / b;
  std::vector<double> z;
  for (int i = 0; i < b; ++i) {
    z.push_back(rotation + i * gamma);
    z.push_back(rotation + i * gamma + overlap);
  }
  return from_boundaries(z);
}

TulipDesign ges_design(const std::vector<double>& lengths, double rotation) {
  std::vector<double> z;
  double at = rotation;
  for (double l : lengths) {
    z.push_back(at);
    z.push_back(at);
    at += l;
  }
  if (std::abs(at - rotation - kTwoPi) > 1e-9) {
    throw Error(ErrorCode::InvalidBoundaries, "GES arc lengths must sum to 2pi");
  }
  return from_boundaries(z);
}

}  // namespace tulipba
