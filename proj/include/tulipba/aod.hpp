// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// Angle-of-departure priors on D = [0, 2pi).

#pragma once

#include <random>
#include <span>
#include <variant>
#include <vector>

#include "tulipba/geometry.hpp"

namespace tulipba {

/// Tolerance on total probability mass.
inline constexpr double kProbEps = 1e-9;

using Rng = std::mt19937_64;

class AoDPdf;

struct UniformPdf {};

/// N(mu, sigma) truncated to (0, 2pi) and renormalized.
struct TruncatedNormalPdf {
  double mu;
  double sigma;
};

/// Constant density on each cell [breakpoints[k], breakpoints[k+1]).
struct PiecewiseConstantPdf {
  std::vector<double> breakpoints;  // 0 = t_0 < ... < t_n = 2pi
  std::vector<double> densities;    // per radian, size n
};

struct MixturePdf {
  std::vector<double> weights;
  std::vector<AoDPdf> components;
};

class AoDPdf {
 public:
  using Kind = std::variant<UniformPdf, TruncatedNormalPdf, PiecewiseConstantPdf, MixturePdf>;

  static AoDPdf uniform();
  /// Throws ErrorCode::InvalidPdf unless sigma > 0 and mu is finite.
  static AoDPdf truncated_normal(double mu, double sigma);
  /// Throws ErrorCode::InvalidPdf on malformed cells or total mass != 1.
  static AoDPdf piecewise(std::vector<double> breakpoints, std::vector<double> densities);

  const Kind& kind() const { return kind_; }
  bool is_uniform() const { return std::holds_alternative<UniformPdf>(kind_); }

  /// Mass of [0, x) for x in [0, 2pi].
  double cdf(double x) const;
  double density(double angle) const;
  double mass(const ArcSet& region) const;
  double sample(Rng& rng) const;

 private:
  explicit AoDPdf(Kind kind);

  Kind kind_;
  // Truncated normal: normalization constant. Piecewise: prefix masses.
  double norm_ = 1.0;
  std::vector<double> prefix_;

  friend AoDPdf mixture_of(std::vector<AoDPdf> pdfs, std::vector<double> weights);
};

/// Weighted average of per-user priors. Throws ErrorCode::InvalidWeights.
AoDPdf mixture_of(std::vector<AoDPdf> pdfs, std::vector<double> weights);

/// Piecewise-constant pdf on n equal cells with exact cell masses.
/// Throws ErrorCode::InvalidResolution when n < 2.
AoDPdf discretize(const AoDPdf& pdf, int n);

inline double mass(const AoDPdf& pdf, const ArcSet& region) { return pdf.mass(region); }
inline double sample(const AoDPdf& pdf, Rng& rng) { return pdf.sample(rng); }

}  // namespace tulipba
