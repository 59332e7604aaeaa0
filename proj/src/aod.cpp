// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include "tulipba/aod.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tulipba/error.hpp"

namespace tulipba {
namespace {

double std_normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

AoDPdf::AoDPdf(Kind kind) : kind_(std::move(kind)) {}

AoDPdf AoDPdf::uniform() { return AoDPdf(UniformPdf{}); }

AoDPdf AoDPdf::truncated_normal(double mu, double sigma) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma <= 0.0) {
    throw Error(ErrorCode::InvalidPdf, "truncated normal needs finite mu and sigma > 0");
  }
  AoDPdf pdf(TruncatedNormalPdf{mu, sigma});
  pdf.norm_ = std_normal_cdf((kTwoPi - mu) / sigma) - std_normal_cdf(-mu / sigma);
  if (!(pdf.norm_ > 0.0)) {
    throw Error(ErrorCode::InvalidPdf, "truncated normal has no mass on (0, 2pi)");
  }
  return pdf;
}

AoDPdf AoDPdf::piecewise(std::vector<double> breakpoints, std::vector<double> densities) {
  if (breakpoints.size() < 2 || densities.size() + 1 != breakpoints.size()) {
    throw Error(ErrorCode::InvalidPdf, "piecewise pdf needs n+1 breakpoints for n densities");
  }
  if (std::abs(breakpoints.front()) > kGeoEps ||
      std::abs(breakpoints.back() - kTwoPi) > kGeoEps) {
    throw Error(ErrorCode::InvalidPdf, "piecewise breakpoints must span [0, 2pi]");
  }
  breakpoints.front() = 0.0;
  breakpoints.back() = kTwoPi;
  std::vector<double> prefix{0.0};
  for (std::size_t k = 0; k < densities.size(); ++k) {
    const double width = breakpoints[k + 1] - breakpoints[k];
    if (!(width > 0.0)) {
      throw Error(ErrorCode::InvalidPdf, "piecewise breakpoints must be increasing");
    }
    if (!(densities[k] >= 0.0) || !std::isfinite(densities[k])) {
      throw Error(ErrorCode::InvalidPdf, "piecewise densities must be finite and >= 0");
    }
    prefix.push_back(prefix.back() + densities[k] * width);
  }
  if (std::abs(prefix.back() - 1.0) > kProbEps) {
    throw Error(ErrorCode::InvalidPdf, "piecewise pdf total mass is not 1");
  }
  AoDPdf pdf(PiecewiseConstantPdf{std::move(breakpoints), std::move(densities)});
  pdf.prefix_ = std::move(prefix);
  return pdf;
}

double AoDPdf::cdf(double x) const {
  x = std::clamp(x, 0.0, kTwoPi);
  return std::visit(
      Overloaded{
          [&](const UniformPdf&) { return x / kTwoPi; },
          [&](const TruncatedNormalPdf& tn) {
            return (std_normal_cdf((x - tn.mu) / tn.sigma) - std_normal_cdf(-tn.mu / tn.sigma)) /
                   norm_;
          },
          [&](const PiecewiseConstantPdf& pc) {
            const auto& t = pc.breakpoints;
            auto it = std::upper_bound(t.begin(), t.end(), x);
            if (it == t.end()) return prefix_.back();
            const auto k = static_cast<std::size_t>(std::distance(t.begin(), it)) - 1;
            return prefix_[k] + pc.densities[k] * (x - t[k]);
          },
          [&](const MixturePdf& mix) {
            double acc = 0.0;
            for (std::size_t j = 0; j < mix.components.size(); ++j) {
              acc += mix.weights[j] * mix.components[j].cdf(x);
            }
            return acc;
          },
      },
      kind_);
}

double AoDPdf::density(double angle) const {
  const double x = wrap_angle(angle);
  return std::visit(
      Overloaded{
          [&](const UniformPdf&) { return 1.0 / kTwoPi; },
          [&](const TruncatedNormalPdf& tn) {
            const double z = (x - tn.mu) / tn.sigma;
            return std::exp(-0.5 * z * z) / (tn.sigma * std::sqrt(kTwoPi) * norm_);
          },
          [&](const PiecewiseConstantPdf& pc) {
            const auto& t = pc.breakpoints;
            auto it = std::upper_bound(t.begin(), t.end(), x);
            const auto k = static_cast<std::size_t>(std::distance(t.begin(), it)) - 1;
            return pc.densities[std::min(k, pc.densities.size() - 1)];
          },
          [&](const MixturePdf& mix) {
            double acc = 0.0;
            for (std::size_t j = 0; j < mix.components.size(); ++j) {
              acc += mix.weights[j] * mix.components[j].density(x);
            }
            return acc;
          },
      },
      kind_);
}

double AoDPdf::mass(const ArcSet& region) const {
  if (const auto* mix = std::get_if<MixturePdf>(&kind_)) {
    double acc = 0.0;
    for (std::size_t j = 0; j < mix->components.size(); ++j) {
      acc += mix->weights[j] * mix->components[j].mass(region);
    }
    return acc;
  }
  double acc = 0.0;
  for (const auto& piece : region.pieces()) acc += cdf(piece.hi) - cdf(piece.lo);
  return acc;
}

double AoDPdf::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return std::visit(
      Overloaded{
          [&](const UniformPdf&) { return wrap_angle(kTwoPi * unit(rng)); },
          [&](const TruncatedNormalPdf& tn) {
            std::normal_distribution<double> normal(tn.mu, tn.sigma);
            for (;;) {
              const double x = normal(rng);
              if (x > 0.0 && x < kTwoPi) return x;
            }
          },
          [&](const PiecewiseConstantPdf& pc) {
            const double u = unit(rng) * prefix_.back();
            auto it = std::upper_bound(prefix_.begin() + 1, prefix_.end(), u);
            auto k = static_cast<std::size_t>(std::distance(prefix_.begin() + 1, it));
            k = std::min(k, pc.densities.size() - 1);
            while (pc.densities[k] <= 0.0 && k > 0) --k;
            const double lo = pc.breakpoints[k];
            const double hi = pc.breakpoints[k + 1];
            return wrap_angle(lo + (hi - lo) * unit(rng));
          },
          [&](const MixturePdf& mix) {
            const double u = unit(rng);
            double acc = 0.0;
            std::size_t pick = mix.components.size() - 1;
            for (std::size_t j = 0; j < mix.components.size(); ++j) {
              acc += mix.weights[j];
              if (u < acc && mix.weights[j] > 0.0) {
                pick = j;
                break;
              }
            }
            while (mix.weights[pick] <= 0.0 && pick > 0) --pick;
            return mix.components[pick].sample(rng);
          },
      },
      kind_);
}

AoDPdf mixture_of(std::vector<AoDPdf> pdfs, std::vector<double> weights) {
  if (pdfs.empty() || pdfs.size() != weights.size()) {
    throw Error(ErrorCode::InvalidWeights, "mixture needs one weight per component");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidWeights, "mixture weights must be finite and >= 0");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kProbEps) {
    throw Error(ErrorCode::InvalidWeights, "mixture weights must sum to 1");
  }
  return AoDPdf(MixturePdf{std::move(weights), std::move(pdfs)});
}

AoDPdf discretize(const AoDPdf& pdf, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidResolution, "discretization needs at least 2 cells");
  const double step = kTwoPi / n;
  std::vector<double> breakpoints(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) breakpoints[static_cast<std::size_t>(k)] = k * step;
  breakpoints.back() = kTwoPi;
  std::vector<double> densities(static_cast<std::size_t>(n));
  double prev = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const double next = pdf.cdf(breakpoints[i + 1]);
    densities[i] = std::max(0.0, next - prev) / (breakpoints[i + 1] - breakpoints[i]);
    prev = next;
  }
  return AoDPdf::piecewise(std::move(breakpoints), std::move(densities));
}

}  // namespace tulipba
