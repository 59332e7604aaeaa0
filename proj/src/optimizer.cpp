// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include "tulipba/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

namespace tulipba {
namespace {

long floor_div(long a, long n) {
  long q = a / n;
  if ((a % n != 0) && ((a < 0) != (n < 0))) --q;
  return q;
}

bool improves(double candidate, double incumbent) {
  return candidate < incumbent - 1e-12 * std::max(1.0, std::abs(incumbent));
}

}  // namespace

TulipDesign Solution::design(const GroundSet& ground) const {
  std::vector<double> angles;
  angles.reserve(z.size());
  for (long k : z) angles.push_back(ground.angle(k));
  return from_boundaries(angles);
}

GridObjective::GridObjective(GroundSet ground, const AoDPdf& pdf, PolicySpec policy)
    : ground_(ground), policy_(policy) {
  if (ground.n < 4) throw Error(ErrorCode::InvalidResolution, "ground set needs at least 4 points");
  cdf_.resize(static_cast<std::size_t>(ground.n) + 1);
  for (int k = 0; k <= ground.n; ++k) cdf_[static_cast<std::size_t>(k)] = pdf.cdf(ground.angle(k));
  cdf_.front() = 0.0;
  cdf_.back() = 1.0;
}

double GridObjective::cumulative(long k) const {
  const long q = floor_div(k, ground_.n);
  return static_cast<double>(q) + cdf_[static_cast<std::size_t>(k - q * ground_.n)];
}

ObjectiveContext GridObjective::context(std::span<const long> z) const {
  const int len = static_cast<int>(z.size());
  const int b = len / 2;
  CbTable table;
  std::vector<double> masses;
  for (int k = 0; k < len; ++k) {
    const long lo = z[static_cast<std::size_t>(k)];
    const long hi = k + 1 < len ? z[static_cast<std::size_t>(k + 1)] : z[0] + ground_.n;
    if (hi == lo) continue;
    const int i = k / 2;
    const IndexSet set = k % 2 == 0 ? IndexSet::single((i + b - 1) % b) | IndexSet::single(i)
                                    : IndexSet::single(i);
    const double width = static_cast<double>(hi - lo) * ground_.step();
    const double mass = cumulative(hi) - cumulative(lo);
    auto it = std::find(table.sets.begin(), table.sets.end(), set);
    if (it != table.sets.end()) {
      const auto at = static_cast<std::size_t>(it - table.sets.begin());
      table.widths[at] += width;
      masses[at] += mass;
    } else {
      table.sets.push_back(set);
      table.widths.push_back(width);
      masses.push_back(mass);
    }
  }
  return {std::move(table), std::move(masses), policy_};
}

double GridObjective::operator()(std::span<const long> z) const {
  return lambda_bar(context(z));
}

bool valid_solution(std::span<const long> z, int n) {
  const int len = static_cast<int>(z.size());
  if (len < 4 || len % 2 != 0) return false;
  if (z[0] < 0 || z[0] >= n) return false;
  for (int k = 1; k < len; ++k) {
    if (z[static_cast<std::size_t>(k)] < z[static_cast<std::size_t>(k - 1)]) return false;
  }
  if (z[static_cast<std::size_t>(len - 1)] > z[0] + n) return false;
  auto at = [&](int k) {
    return k < len ? z[static_cast<std::size_t>(k)] : z[static_cast<std::size_t>(k - len)] + n;
  };
  for (int i = 0; i < len / 2; ++i) {
    if (at(2 * i + 3) - at(2 * i) < 1) return false;
  }
  return true;
}

bool apply_move(std::vector<long>& z, int n, const WindowMove& move) {
  const int len = static_cast<int>(z.size());
  const auto first = static_cast<std::size_t>(move.first);
  const auto last = static_cast<std::size_t>(move.last);
  const long step = move.direction == Direction::Forward ? 1 : -1;
  const bool rotation = move.first == 0 && move.last == len - 1;
  if (!rotation) {
    if (step > 0) {
      const long next = move.last + 1 < len ? z[last + 1] : z[0] + n;
      if (z[last] + 1 > next) return false;
    } else {
      const long prev = move.first > 0 ? z[first - 1] : z[static_cast<std::size_t>(len - 1)] - n;
      if (z[first] - 1 < prev) return false;
    }
  }
  for (std::size_t k = first; k <= last; ++k) z[k] += step;
  auto at = [&](int k) {
    return k < len ? z[static_cast<std::size_t>(k)] : z[static_cast<std::size_t>(k - len)] + n;
  };
  for (int i = 0; i < len / 2; ++i) {
    if (at(2 * i + 3) - at(2 * i) < 1) {
      for (std::size_t k = first; k <= last; ++k) z[k] -= step;
      return false;
    }
  }
  if (z[0] < 0) {
    for (long& v : z) v += n;
  } else if (z[0] >= n) {
    for (long& v : z) v -= n;
  }
  return true;
}

std::vector<WindowMove> all_moves(int b) {
  std::vector<WindowMove> moves;
  const int len = 2 * b;
  for (int p = 0; p < len; ++p) {
    for (int q = p; q < len; ++q) {
      moves.push_back({p, q, Direction::Forward});
      moves.push_back({p, q, Direction::Backward});
    }
  }
  return moves;
}

ModifyResult modify_sol(const Solution& current, const GridObjective& objective, Rng& rng) {
  std::vector<WindowMove> moves = all_moves(current.beams());
  std::shuffle(moves.begin(), moves.end(), rng);
  long evaluations = 0;
  std::vector<long> z;
  for (const WindowMove& move : moves) {
    z = current.z;
    if (!apply_move(z, objective.ground().n, move)) continue;
    const double value = objective(z);
    ++evaluations;
    if (improves(value, current.lambda_bar)) {
      return {false, Solution{std::move(z), value}, evaluations};
    }
  }
  return {true, current, evaluations};
}

Solution random_solution(int b, const GridObjective& objective, Rng& rng) {
  const int n = objective.ground().n;
  if (n < 2 * b) throw Error(ErrorCode::Infeasible, "grid has fewer points than boundaries");
  std::uniform_int_distribution<long> pick(0, n - 1);
  std::vector<long> z;
  while (static_cast<int>(z.size()) < 2 * b) {
    const long v = pick(rng);
    if (std::find(z.begin(), z.end(), v) == z.end()) z.push_back(v);
  }
  std::sort(z.begin(), z.end());
  const double value = objective(z);
  return {std::move(z), value};
}

RestartTrace run_restart(int restart, Solution start, const GridObjective& objective, Rng& rng,
                         long max_iterations) {
  RestartTrace trace{restart, {start.lambda_bar}, std::move(start), 0};
  for (long iteration = 0;; ++iteration) {
    ModifyResult step = modify_sol(trace.best, objective, rng);
    trace.evaluations += step.evaluations;
    if (step.stable) break;
    trace.best = std::move(step.solution);
    trace.lambda_trace.push_back(trace.best.lambda_bar);
    if (iteration + 1 >= max_iterations) {
      throw NonConvergenceError("restart " + std::to_string(restart) + " exceeded " +
                                    std::to_string(max_iterations) + " iterations",
                                trace.best);
    }
  }
  return trace;
}

OptimizerResult greedy_sa(const OptimizerConfig& cfg, int b) {
  if (b < 2 || b > 64) throw Error(ErrorCode::Infeasible, "b must be in [2, 64]");
  if (cfg.restarts < 1) throw Error(ErrorCode::InvalidInput, "restarts must be >= 1");
  if (cfg.grid < 4 * b) throw Error(ErrorCode::Infeasible, "grid must have at least 4b points");
  const GridObjective objective(GroundSet{cfg.grid}, cfg.pdf, cfg.policy);

  const auto restarts = static_cast<std::size_t>(cfg.restarts);
  std::vector<std::optional<RestartTrace>> results(restarts);
  std::vector<std::exception_ptr> errors(restarts);
  std::vector<std::optional<Solution>> partial(restarts);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t r = next++; r < restarts; r = next++) {
      try {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                          static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(r)};
        Rng rng(seq);
        Solution start = random_solution(b, objective, rng);
        results[r] = run_restart(static_cast<int>(r), std::move(start), objective, rng,
                                 cfg.max_iterations);
      } catch (const NonConvergenceError& e) {
        partial[r] = e.best();
        errors[r] = std::current_exception();
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };

  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(restarts));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  for (std::size_t r = 0; r < restarts; ++r) {
    if (!errors[r]) continue;
    if (!partial[r]) std::rethrow_exception(errors[r]);
    Solution best = *partial[r];
    for (std::size_t s = 0; s < restarts; ++s) {
      const Solution* cand = results[s] ? &results[s]->best : (partial[s] ? &*partial[s] : nullptr);
      if (cand && cand->lambda_bar < best.lambda_bar) best = *cand;
    }
    throw NonConvergenceError("restart " + std::to_string(r) + " did not converge", best);
  }

  OptimizerResult out{std::numeric_limits<double>::infinity(), {}, {}, -1, {}};
  for (std::size_t r = 0; r < restarts; ++r) {
    const RestartTrace& t = *results[r];
    if (t.best.lambda_bar < out.lambda_bar) {
      out.lambda_bar = t.best.lambda_bar;
      out.solution = t.best;
      out.best_restart = static_cast<int>(r);
    }
    out.restarts.push_back(t);
  }
  out.design = out.solution.design(objective.ground());
  return out;
}

double brute_force_cost(int b, int n, bool rotation_invariant) {
  // Multisets of size k drawn from n grid points: C(n + k - 1, k).
  const int k = rotation_invariant ? 2 * b - 1 : 2 * b;
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * static_cast<double>(n - 1 + j) / j;
  return 2.0 * c;
}

BruteForceResult brute_force(int b, PolicySpec policy, const AoDPdf& pdf, int n, double budget) {
  if (b < 2 || n < 2 * b) throw Error(ErrorCode::Infeasible, "brute force needs b >= 2, N >= 2b");
  const bool pinned = pdf.is_uniform();
  const double cost = brute_force_cost(b, n, pinned);
  if (cost > budget) {
    std::ostringstream msg;
    msg << "brute force would evaluate " << cost << " candidates (budget " << budget << ")";
    throw Error(ErrorCode::BudgetExceeded, msg.str());
  }

  const GridObjective objective(GroundSet{n}, pdf, policy);
  const int len = 2 * b;
  const int free_from = pinned ? 1 : 0;
  std::vector<long> s(static_cast<std::size_t>(len), 0);
  std::vector<long> z(static_cast<std::size_t>(len));
  BruteForceResult best{std::numeric_limits<double>::infinity(), {}, {}, 0};

  auto consider = [&](const std::vector<long>& cand) {
    if (!valid_solution(cand, n)) return;
    const double value = objective(cand);
    ++best.evaluated;
    if (value < best.lambda_bar) {
      best.lambda_bar = value;
      best.solution = Solution{cand, value};
    }
  };

  for (;;) {
    consider(s);
    for (int k = 0; k + 1 < len; ++k) z[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k + 1)];
    z[static_cast<std::size_t>(len - 1)] = s[0] + n;
    consider(z);

    int k = len - 1;
    while (k >= free_from && s[static_cast<std::size_t>(k)] == n - 1) --k;
    if (k < free_from) break;
    const long v = ++s[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < len; ++j) s[static_cast<std::size_t>(j)] = v;
  }
  best.design = best.solution.design(objective.ground());
  return best;
}

}  // namespace tulipba
