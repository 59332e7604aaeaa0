// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include "tulipba/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tulipba/error.hpp"

namespace tulipba {

PolicySpec::PolicySpec(PolicyKind kind, int paths) : kind_(kind), paths_(paths) {
  if (paths < 1) throw Error(ErrorCode::InvalidPolicy, "path count must be >= 1");
  if ((kind == PolicyKind::PSD || kind == PolicyKind::PBF) && paths > 2) {
    throw Error(ErrorCode::InvalidPolicy, "path-aware policies are defined for p <= 2 only");
  }
}

PolicySpec PolicySpec::parse(std::string_view name, int paths) {
  if (name == "sd") return {PolicyKind::SD, paths};
  if (name == "bf") return {PolicyKind::BF, paths};
  if (name == "2sd") return {PolicyKind::PSD, paths};
  if (name == "2bf") return {PolicyKind::PBF, paths};
  throw Error(ErrorCode::InvalidPolicy, "unknown policy '" + std::string(name) + "'");
}

std::string PolicySpec::name() const {
  switch (kind_) {
    case PolicyKind::SD: return "sd";
    case PolicyKind::BF: return "bf";
    case PolicyKind::PSD: return "2sd";
    case PolicyKind::PBF: return "2bf";
  }
  return "?";
}

bool PolicySpec::covers_all_paths() const {
  return paths_ == 1 || kind_ == PolicyKind::SD || kind_ == PolicyKind::PSD;
}

CbTable CbTable::from(std::span<const ComponentBeam> cbs) {
  CbTable t;
  t.sets.reserve(cbs.size());
  t.widths.reserve(cbs.size());
  for (const ComponentBeam& cb : cbs) {
    t.sets.push_back(cb.index_set);
    t.widths.push_back(cb.region.measure());
  }
  return t;
}

std::vector<int> PairFamily::members() const {
  std::vector<int> out;
  for (const auto& [a, b] : pairs) {
    out.push_back(a);
    out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PositivitySet feedback(const BeamDesign& design, std::span<const double> aods) {
  IndexSet acked;
  for (double aod : aods) {
    if (!std::isfinite(aod)) throw Error(ErrorCode::InvalidAngle, "AoD must be finite");
    acked = acked | design.covering(aod);
  }
  if (acked.empty()) {
    throw Error(ErrorCode::InternalConsistency, "no beam acknowledged; design does not cover D");
  }
  return acked;
}

PairFamily enumerate_pairs(const CbTable& table, PositivitySet target) {
  PairFamily family{target, {}};
  for (int a = 0; a < table.size(); ++a) {
    const IndexSet sa = table.sets[static_cast<std::size_t>(a)];
    if (!sa.subset_of(target)) continue;
    for (int b = a; b < table.size(); ++b) {
      if ((sa | table.sets[static_cast<std::size_t>(b)]) == target) {
        family.pairs.emplace_back(a, b);
      }
    }
  }
  return family;
}

PairFamily enumerate_pairs(std::span<const ComponentBeam> cbs, PositivitySet target) {
  return enumerate_pairs(CbTable::from(cbs), target);
}

std::vector<PositivitySet> achievable_sets(const CbTable& table, int paths) {
  std::vector<IndexSet> base(table.sets);
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  std::vector<IndexSet> level = base;
  for (int k = 1; k < paths; ++k) {
    std::vector<IndexSet> next;
    next.reserve(level.size() * base.size());
    for (IndexSet s : level) {
      for (IndexSet c : base) next.push_back(s | c);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  return level;
}

std::vector<PositivitySet> achievable_sets(std::span<const ComponentBeam> cbs, int paths) {
  return achievable_sets(CbTable::from(cbs), paths);
}

namespace {

[[noreturn]] void no_candidate(PositivitySet target) {
  throw Error(ErrorCode::NoCandidate,
              "positivity set " + target.label() + " is not achievable for this design");
}

int find_exact(const CbTable& table, PositivitySet target) {
  for (int k = 0; k < table.size(); ++k) {
    if (table.sets[static_cast<std::size_t>(k)] == target) return k;
  }
  return -1;
}

void require_spanned(const CbTable& table, PositivitySet target) {
  IndexSet span;
  for (IndexSet s : table.sets) {
    if (s.subset_of(target)) span = span | s;
  }
  if (target.empty() || span != target) no_candidate(target);
}

PairFamily checked_pairs(const CbTable& table, PositivitySet target) {
  PairFamily family = enumerate_pairs(table, target);
  if (family.pairs.empty()) no_candidate(target);
  if (static_cast<int>(family.members().size()) > kMaxPairMembers) {
    throw Error(ErrorCode::CombinatorialLimit,
                "2-BF cover search over more than 24 component beams");
  }
  return family;
}

// Bitmask over V_A positions for each pair, for the 2-BF minimum cover.
struct CoverProblem {
  std::vector<int> members;
  std::vector<std::uint32_t> pair_masks;
};

CoverProblem cover_problem(const PairFamily& family) {
  CoverProblem cp{family.members(), {}};
  auto slot = [&](int pos) {
    return static_cast<std::uint32_t>(
        std::lower_bound(cp.members.begin(), cp.members.end(), pos) - cp.members.begin());
  };
  for (const auto& [a, b] : family.pairs) {
    cp.pair_masks.push_back((1U << slot(a)) | (1U << slot(b)));
  }
  return cp;
}

bool hits_all(const CoverProblem& cp, std::uint32_t mask) {
  return std::all_of(cp.pair_masks.begin(), cp.pair_masks.end(),
                     [mask](std::uint32_t pm) { return (pm & mask) != 0; });
}

}  // namespace

ArcSet uncertainty_region(const PolicySpec& policy, std::span<const ComponentBeam> cbs,
                          PositivitySet target) {
  const CbTable table = CbTable::from(cbs);
  if (policy.paths() == 1) {
    const int k = find_exact(table, target);
    if (k < 0) no_candidate(target);
    return cbs[static_cast<std::size_t>(k)].region;
  }

  switch (policy.kind()) {
    case PolicyKind::SD:
    case PolicyKind::BF: {
      require_spanned(table, target);
      IndexSet all;
      for (IndexSet s : table.sets) all = all | s;
      auto beam = [&](int i) {
        ArcSet phi;
        for (const ComponentBeam& cb : cbs) {
          if (cb.index_set.contains(i)) phi = phi.unite(cb.region);
        }
        return phi;
      };
      ArcSet nacked;
      for (int i : (all - target).indices()) nacked = nacked.unite(beam(i));

      if (policy.kind() == PolicyKind::SD) {
        ArcSet acked;
        for (int i : target.indices()) acked = acked.unite(beam(i));
        return acked.subtract(nacked);
      }
      ArcSet best;
      double best_measure = std::numeric_limits<double>::infinity();
      for (int i : target.indices()) {
        ArcSet candidate = beam(i).subtract(nacked);
        const double m = candidate.measure();
        if (m < best_measure) {
          best_measure = m;
          best = std::move(candidate);
        }
      }
      return best;
    }
    case PolicyKind::PSD: {
      const PairFamily family = checked_pairs(table, target);
      ArcSet region;
      for (int k : family.members()) region = region.unite(cbs[static_cast<std::size_t>(k)].region);
      return region;
    }
    case PolicyKind::PBF: {
      const PairFamily family = checked_pairs(table, target);
      const CoverProblem cp = cover_problem(family);
      const auto n = static_cast<std::uint32_t>(cp.members.size());
      ArcSet best;
      double best_measure = std::numeric_limits<double>::infinity();
      for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        if (!hits_all(cp, mask)) continue;
        ArcSet u;
        for (std::uint32_t j = 0; j < n; ++j) {
          if ((mask >> j) & 1U) u = u.unite(cbs[static_cast<std::size_t>(cp.members[j])].region);
        }
        const double m = u.measure();
        if (m < best_measure - kGeoEps) {
          best_measure = m;
          best = std::move(u);
        }
      }
      return best;
    }
  }
  return {};
}

double tb_width(const PolicySpec& policy, const CbTable& table, PositivitySet target) {
  if (policy.paths() == 1) {
    const int k = find_exact(table, target);
    if (k < 0) no_candidate(target);
    return table.widths[static_cast<std::size_t>(k)];
  }

  switch (policy.kind()) {
    case PolicyKind::SD: {
      require_spanned(table, target);
      double w = 0.0;
      for (int k = 0; k < table.size(); ++k) {
        if (table.sets[static_cast<std::size_t>(k)].subset_of(target)) {
          w += table.widths[static_cast<std::size_t>(k)];
        }
      }
      return w;
    }
    case PolicyKind::BF: {
      require_spanned(table, target);
      double best = std::numeric_limits<double>::infinity();
      for (int i : target.indices()) {
        double w = 0.0;
        for (int k = 0; k < table.size(); ++k) {
          const IndexSet s = table.sets[static_cast<std::size_t>(k)];
          if (s.contains(i) && s.subset_of(target)) w += table.widths[static_cast<std::size_t>(k)];
        }
        best = std::min(best, w);
      }
      return best;
    }
    case PolicyKind::PSD: {
      const PairFamily family = checked_pairs(table, target);
      double w = 0.0;
      for (int k : family.members()) w += table.widths[static_cast<std::size_t>(k)];
      return w;
    }
    case PolicyKind::PBF: {
      const PairFamily family = checked_pairs(table, target);
      const CoverProblem cp = cover_problem(family);
      const auto n = static_cast<std::uint32_t>(cp.members.size());
      double best = std::numeric_limits<double>::infinity();
      for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        if (!hits_all(cp, mask)) continue;
        double w = 0.0;
        for (std::uint32_t j = 0; j < n; ++j) {
          if ((mask >> j) & 1U) w += table.widths[static_cast<std::size_t>(cp.members[j])];
        }
        best = std::min(best, w);
      }
      return best;
    }
  }
  return 0.0;
}

double tb_width(const PolicySpec& policy, std::span<const ComponentBeam> cbs,
                PositivitySet target) {
  return tb_width(policy, CbTable::from(cbs), target);
}

}  // namespace tulipba
