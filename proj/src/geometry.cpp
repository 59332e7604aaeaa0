// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#include "tulipba/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tulipba/error.hpp"

namespace tulipba {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidAngle: return "invalid-angle";
    case ErrorCode::InvalidDesign: return "invalid-design";
    case ErrorCode::InvalidWeights: return "invalid-weights";
    case ErrorCode::InvalidResolution: return "invalid-resolution";
    case ErrorCode::InvalidPdf: return "invalid-pdf";
    case ErrorCode::InvalidPolicy: return "invalid-policy";
    case ErrorCode::InvalidBoundaries: return "invalid-boundaries";
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::NoCandidate: return "no-candidate";
    case ErrorCode::CombinatorialLimit: return "combinatorial-limit";
    case ErrorCode::NumericalInstability: return "numerical-instability";
    case ErrorCode::InternalConsistency: return "internal-consistency";
    case ErrorCode::NotCovering: return "not-covering";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::Schema: return "schema";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

// ---------------------------------------------------------------- IndexSet

IndexSet IndexSet::of(std::initializer_list<int> indices) {
  std::uint64_t bits = 0;
  for (int i : indices) bits |= std::uint64_t{1} << i;
  return IndexSet(bits);
}

std::vector<int> IndexSet::indices() const {
  std::vector<int> out;
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest));
  }
  return out;
}

std::string IndexSet::label() const {
  std::string s = "{";
  bool first = true;
  for (int i : indices()) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

// --------------------------------------------------------------------- Arc

double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi - kGeoEps) r = 0.0;
  return r;
}

Arc Arc::normalized(double start, double end) {
  if (!std::isfinite(start) || !std::isfinite(end)) {
    throw Error(ErrorCode::InvalidAngle, "arc endpoints must be finite");
  }
  if (end - start >= kTwoPi - kGeoEps) return full();
  const double s = wrap_angle(start);
  const double e = wrap_angle(end);
  if (std::abs(s - e) < kGeoEps) return empty();
  return Arc(s, e, Kind::Proper);
}

Arc Arc::from_length(double start, double length) {
  if (!std::isfinite(start) || !std::isfinite(length)) {
    throw Error(ErrorCode::InvalidAngle, "arc start and length must be finite");
  }
  if (length < kGeoEps) return empty();
  return normalized(start, start + std::min(length, kTwoPi));
}

double Arc::measure() const {
  switch (kind_) {
    case Kind::Empty: return 0.0;
    case Kind::Full: return kTwoPi;
    case Kind::Proper: break;
  }
  return end_ > start_ ? end_ - start_ : kTwoPi - start_ + end_;
}

bool Arc::contains(double angle) const {
  if (kind_ != Kind::Proper) return kind_ == Kind::Full;
  const double a = wrap_angle(angle);
  if (end_ > start_) return a >= start_ && a < end_;
  return a >= start_ || a < end_;
}

double Arc::midpoint() const {
  if (kind_ == Kind::Full) return std::numbers::pi;
  return wrap_angle(start_ + 0.5 * measure());
}

// ------------------------------------------------------------------ ArcSet

ArcSet::ArcSet(const Arc& arc) {
  if (arc.is_empty()) return;
  if (arc.is_full()) {
    pieces_.push_back({0.0, kTwoPi});
    return;
  }
  if (arc.end() > arc.start()) {
    pieces_.push_back({arc.start(), arc.end()});
    return;
  }
  std::vector<Piece> pieces{{0.0, arc.end()}, {arc.start(), kTwoPi}};
  *this = from_pieces(std::move(pieces));
}

ArcSet::ArcSet(std::span<const Arc> arcs) {
  std::vector<Piece> pieces;
  for (const Arc& a : arcs) {
    const ArcSet one(a);
    pieces.insert(pieces.end(), one.pieces_.begin(), one.pieces_.end());
  }
  *this = from_pieces(std::move(pieces));
}

ArcSet ArcSet::from_pieces(std::vector<Piece> pieces) {
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  ArcSet out;
  for (Piece p : pieces) {
    p.lo = std::clamp(p.lo, 0.0, kTwoPi);
    p.hi = std::clamp(p.hi, 0.0, kTwoPi);
    if (p.hi - p.lo < kGeoEps) continue;
    if (!out.pieces_.empty() && p.lo <= out.pieces_.back().hi + kGeoEps) {
      out.pieces_.back().hi = std::max(out.pieces_.back().hi, p.hi);
    } else {
      out.pieces_.push_back(p);
    }
  }
  return out;
}

std::vector<Arc> ArcSet::arcs() const {
  std::vector<Arc> out;
  if (pieces_.empty()) return out;
  if (is_full()) return {Arc::full()};
  std::size_t first = 0;
  std::size_t last = pieces_.size();
  const bool wrap = pieces_.size() >= 2 && pieces_.front().lo <= kGeoEps &&
                    pieces_.back().hi >= kTwoPi - kGeoEps;
  if (wrap) {
    ++first;
    --last;
  }
  for (std::size_t i = first; i < last; ++i) {
    out.push_back(Arc::normalized(pieces_[i].lo, pieces_[i].hi));
  }
  if (wrap) out.push_back(Arc::normalized(pieces_.back().lo, pieces_.front().hi));
  return out;
}

double ArcSet::measure() const {
  double m = 0.0;
  for (const Piece& p : pieces_) m += p.hi - p.lo;
  return m;
}

bool ArcSet::is_full() const {
  return pieces_.size() == 1 && pieces_[0].lo <= kGeoEps &&
         pieces_[0].hi >= kTwoPi - kGeoEps;
}

bool ArcSet::contains(double angle) const {
  const double a = wrap_angle(angle);
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), a,
                             [](double v, const Piece& p) { return v < p.lo; });
  if (it == pieces_.begin()) return false;
  --it;
  return a >= it->lo && a < it->hi;
}

ArcSet ArcSet::unite(const ArcSet& other) const {
  std::vector<Piece> all(pieces_);
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return from_pieces(std::move(all));
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
  std::vector<Piece> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pieces_.size() && j < other.pieces_.size()) {
    const Piece& a = pieces_[i];
    const Piece& b = other.pieces_[j];
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (hi - lo >= kGeoEps) out.push_back({lo, hi});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return from_pieces(std::move(out));
}

ArcSet ArcSet::complement() const {
  std::vector<Piece> out;
  double cursor = 0.0;
  for (const Piece& p : pieces_) {
    if (p.lo > cursor) out.push_back({cursor, p.lo});
    cursor = std::max(cursor, p.hi);
  }
  if (cursor < kTwoPi) out.push_back({cursor, kTwoPi});
  return from_pieces(std::move(out));
}

double measure(const ArcSet& set) { return set.measure(); }
ArcSet intersect(const ArcSet& a, const ArcSet& b) { return a.intersect(b); }
ArcSet unite(const ArcSet& a, const ArcSet& b) { return a.unite(b); }
ArcSet complement(const ArcSet& a) { return a.complement(); }

// -------------------------------------------------------------- BeamDesign

BeamDesign::BeamDesign(std::vector<Arc> beams) : beams_(std::move(beams)) {
  if (beams_.size() < 2 || beams_.size() > 64) {
    throw Error(ErrorCode::InvalidDesign, "a beam design needs between 2 and 64 beams");
  }
  for (std::size_t i = 0; i < beams_.size(); ++i) {
    if (beams_[i].is_empty()) {
      throw Error(ErrorCode::InvalidDesign,
                  "beam " + std::to_string(i) + " has zero measure");
    }
  }
}

IndexSet BeamDesign::covering(double angle) const {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < beams_.size(); ++i) {
    if (beams_[i].contains(angle)) bits |= std::uint64_t{1} << i;
  }
  return IndexSet(bits);
}

std::vector<ComponentBeam> component_beams(const BeamDesign& design) {
  std::vector<double> bounds;
  for (const Arc& beam : design.beams()) {
    if (beam.is_full()) continue;
    bounds.push_back(beam.start());
    bounds.push_back(beam.end());
  }
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end(),
                           [](double a, double b) { return b - a < kGeoEps; }),
               bounds.end());
  // 0 and 2pi are the same boundary.
  if (bounds.size() >= 2 && bounds.back() >= kTwoPi - kGeoEps + bounds.front()) {
    bounds.pop_back();
  }

  std::map<IndexSet, std::vector<Arc>> regions;
  if (bounds.empty()) {
    regions[design.covering(0.0)].push_back(Arc::full());
  } else {
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      const double lo = bounds[k];
      const double hi = k + 1 < bounds.size() ? bounds[k + 1] : bounds[0] + kTwoPi;
      const Arc cell = Arc::normalized(lo, hi);
      const IndexSet cover = design.covering(cell.midpoint());
      if (!cover.empty()) regions[cover].push_back(cell);
    }
  }

  std::vector<ComponentBeam> out;
  out.reserve(regions.size());
  for (auto& [index_set, arcs] : regions) {
    out.push_back({index_set, ArcSet(arcs)});
  }
  return out;
}

bool coverage_check(const BeamDesign& design) {
  return ArcSet(design.beams()).is_full();
}

}  // namespace tulipba
