// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include "tulipba/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "tulipba/error.hpp"

namespace tulipba {
namespace {

constexpr std::uint64_t kChunk = 1 << 16;

struct Decoded {
  PositivitySet set;
  ArcSet region;
  double width;
  double gain;
};

struct ChunkStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double gain_sum = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t violations = 0;
  std::vector<TrialRecord> records;
};

}  // namespace

double SimReport::frequency(PositivitySet a) const {
  const auto it = counts.find(a);
  if (it == counts.end() || trials == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(trials);
}

double gain_proxy(double width) {
  if (!(width > 0.0) || width > kTwoPi + kGeoEps) {
    throw Error(ErrorCode::InvalidInput, "gain proxy needs a width in (0, 2pi]");
  }
  return kTwoPi / width;
}

SimReport simulate(const BeamDesign& design, const PolicySpec& policy, const AoDPdf& pdf,
                   const SimOptions& options) {
  if (options.trials == 0) throw Error(ErrorCode::InvalidInput, "trials must be positive");
  if (!coverage_check(design)) {
    throw Error(ErrorCode::NotCovering, "scanning beams do not cover the angular domain");
  }
  const std::vector<ComponentBeam> cbs = component_beams(design);
  std::vector<Decoded> table;
  for (PositivitySet a : achievable_sets(cbs, policy.paths())) {
    ArcSet region = uncertainty_region(policy, cbs, a);
    const double width = region.measure();
    table.push_back({a, std::move(region), width, gain_proxy(width)});
  }
  auto lookup = [&](PositivitySet a) -> std::size_t {
    const auto it = std::lower_bound(table.begin(), table.end(), a,
                                     [](const Decoded& d, PositivitySet s) { return d.set < s; });
    if (it == table.end() || it->set != a) {
      throw Error(ErrorCode::InternalConsistency,
                  "feedback " + a.label() + " is not an achievable positivity set");
    }
    return static_cast<std::size_t>(it - table.begin());
  };

  const std::uint64_t chunks = (options.trials + kChunk - 1) / kChunk;
  std::vector<ChunkStats> stats(chunks);
  const int paths = policy.paths();
  const bool all_paths = policy.covers_all_paths();

  auto run_chunk = [&](std::uint64_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    Rng rng(seq);
    ChunkStats& s = stats[c];
    s.counts.assign(table.size(), 0);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(options.trials, begin + kChunk);
    std::vector<double> aods(static_cast<std::size_t>(paths));
    for (std::uint64_t t = begin; t < end; ++t) {
      for (double& x : aods) x = pdf.sample(rng);
      const std::size_t k = lookup(feedback(design, aods));
      const Decoded& d = table[k];
      int inside = 0;
      for (double x : aods) inside += d.region.contains(x);
      if (all_paths ? inside < paths : inside == 0) ++s.violations;
      ++s.counts[k];
      ++s.n;
      const double delta = d.width - s.mean;
      s.mean += delta / static_cast<double>(s.n);
      s.m2 += delta * (d.width - s.mean);
      s.gain_sum += d.gain;
      if (options.record_trials) s.records.push_back({t, d.set, d.width});
    }
  };

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::uint64_t c = next++; c < chunks && !failed; c = next++) {
      try {
        run_chunk(c);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  unsigned workers = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                         : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  SimReport report;
  report.trials = options.trials;
  report.seed = options.seed;
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
  double gain = 0.0;
  std::vector<std::uint64_t> counts(table.size(), 0);
  for (ChunkStats& s : stats) {
    const double sn = static_cast<double>(s.n);
    const double total = n + sn;
    const double delta = s.mean - mean;
    mean += delta * sn / total;
    m2 += s.m2 + delta * delta * n * sn / total;
    n = total;
    gain += s.gain_sum;
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += s.counts[k];
    report.containment_violations += s.violations;
    report.records.insert(report.records.end(), s.records.begin(), s.records.end());
  }
  report.empirical_lambda_bar = mean;
  report.std_error = n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
  report.mean_gain_proxy = gain / n;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] > 0) report.counts.emplace(table[k].set, counts[k]);
  }
  return report;
}

}  // namespace tulipba
