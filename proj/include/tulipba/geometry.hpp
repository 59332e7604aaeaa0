// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// Arc arithmetic on the circle D = [0, 2pi) and component-beam extraction.

#pragma once

#include <bit>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace tulipba {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Absolute tolerance for endpoint coincidence, in radians.
inline constexpr double kGeoEps = 1e-12;

/// Subset of beam indices [0, b), b <= 64.
class IndexSet {
 public:
  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr IndexSet single(int i) { return IndexSet(std::uint64_t{1} << i); }
  static IndexSet of(std::initializer_list<int> indices);
  static constexpr IndexSet first(int b) {
    return IndexSet(b >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << b) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
  constexpr bool subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<int> indices() const;
  /// "{0,1}" style rendering, used in reports and plots.
  std::string label() const;

  constexpr IndexSet operator|(IndexSet o) const { return IndexSet(bits_ | o.bits_); }
  constexpr IndexSet operator&(IndexSet o) const { return IndexSet(bits_ & o.bits_); }
  constexpr IndexSet operator-(IndexSet o) const { return IndexSet(bits_ & ~o.bits_); }
  constexpr auto operator<=>(const IndexSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Half-open arc [start, end) on the circle. Wraps past 2pi when end <= start.
class Arc {
 public:
  /// The empty arc.
  constexpr Arc() = default;

  static constexpr Arc empty() { return Arc(); }
  static constexpr Arc full() { return Arc(0.0, 0.0, Kind::Full); }

  /// Reduces both endpoints modulo 2pi. A raw span of at least 2pi is FULL.
  /// Throws ErrorCode::InvalidAngle on non-finite input.
  static Arc normalized(double start, double end);
  /// Arc starting at `start` spanning `length` radians (clamped to [0, 2pi]).
  static Arc from_length(double start, double length);

  double start() const { return start_; }
  double end() const { return end_; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_full() const { return kind_ == Kind::Full; }
  bool wraps() const { return kind_ == Kind::Proper && end_ <= start_; }
  double measure() const;
  bool contains(double angle) const;
  /// Midpoint along the arc, in [0, 2pi).
  double midpoint() const;

  bool operator==(const Arc&) const = default;

 private:
  enum class Kind { Empty, Full, Proper };
  constexpr Arc(double s, double e, Kind k) : start_(s), end_(e), kind_(k) {}

  double start_ = 0.0;
  double end_ = 0.0;
  Kind kind_ = Kind::Empty;
};

/// Reduces an angle into [0, 2pi).
double wrap_angle(double angle);

/// Finite union of disjoint, non-adjacent arcs.
///
/// Stored internally as sorted linear intervals inside [0, 2pi]; an interval
/// touching 2pi and one touching 0 are reported as a single wrapping arc.
class ArcSet {
 public:
  ArcSet() = default;
  explicit ArcSet(const Arc& arc);
  explicit ArcSet(std::span<const Arc> arcs);

  static ArcSet full() { return ArcSet(Arc::full()); }

  /// Member arcs sorted by start; wrapping member (if any) comes last.
  std::vector<Arc> arcs() const;
  double measure() const;
  bool empty() const { return pieces_.empty(); }
  bool is_full() const;
  bool contains(double angle) const;

  ArcSet unite(const ArcSet& other) const;
  ArcSet intersect(const ArcSet& other) const;
  /// Complement relative to D.
  ArcSet complement() const;
  ArcSet subtract(const ArcSet& other) const { return intersect(other.complement()); }

  struct Piece {
    double lo;
    double hi;
  };
  /// Linear pieces inside [0, 2pi], sorted and merged.
  std::span<const Piece> pieces() const { return pieces_; }

 private:
  static ArcSet from_pieces(std::vector<Piece> pieces);
  std::vector<Piece> pieces_;
};

double measure(const ArcSet& set);
ArcSet intersect(const ArcSet& a, const ArcSet& b);
ArcSet unite(const ArcSet& a, const ArcSet& b);
ArcSet complement(const ArcSet& a);

/// Ordered list of b >= 2 contiguous scanning beams.
class BeamDesign {
 public:
  /// Throws ErrorCode::InvalidDesign if b < 2, b > 64, or a beam is empty.
  explicit BeamDesign(std::vector<Arc> beams);

  int size() const { return static_cast<int>(beams_.size()); }
  const Arc& beam(int i) const { return beams_[static_cast<std::size_t>(i)]; }
  std::span<const Arc> beams() const { return beams_; }

  /// Set of beams containing `angle`.
  IndexSet covering(double angle) const;

 private:
  std::vector<Arc> beams_;
};

/// omega_A: the region covered by exactly the beams in A.
struct ComponentBeam {
  IndexSet index_set;
  ArcSet region;
};

/// All nonempty component beams, sorted by index set.
///
/// Sorts the beam boundaries and classifies each elementary arc between
/// consecutive boundaries by the beams covering its midpoint. Arcs covered by
/// no beam are not reported.
std::vector<ComponentBeam> component_beams(const BeamDesign& design);

/// True iff the beams cover D up to gaps below kGeoEps.
bool coverage_check(const BeamDesign& design);

}  // namespace tulipba
