// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors
//
// Tulip designs: contiguous scanning beams where only circularly adjacent
// beams overlap.
//
// A tulip with b beams is fully described by 2b circularly ordered boundary
// points z_0 <= z_1 <= ... <= z_{2b-1} <= z_0 + 2pi with
//
//   x_i = z_{2i}          (start of beam i)
//   y_i = z_{2i+3}        (end of beam i, indices mod 2b, unwrapped)
//
// so that [z_{2i}, z_{2i+1}) is the overlap of beams i-1 and i and
// [z_{2i+1}, z_{2i+2}) is the part of beam i covered by no other beam.

#pragma once

#include <string>
#include <vector>

#include "tulipba/geometry.hpp"

namespace tulipba {

/// Phi_i = [x_i, y_i). x_0 in [0, 2pi); the other values are unwrapped so
/// that x_0 <= x_1 <= ... and y_i > x_i.
struct TulipDesign {
  std::vector<double> x;
  std::vector<double> y;

  int size() const { return static_cast<int>(x.size()); }
  BeamDesign beams() const;
};

/// C_eff: primary[i] = omega_i, overlap[i] = omega_{i,i+1 mod b}. Overlaps
/// may be empty.
struct EffCBSet {
  std::vector<Arc> primary;
  std::vector<Arc> overlap;

  double total_measure() const;
};

struct Violation {
  std::string constraint;  // start-order, interleave, wrap-end, wrap-cover, beam-width
  int index;
};

/// Empty when every validity constraint holds.
std::vector<Violation> validate(const TulipDesign& design);

/// Throws ErrorCode::InvalidBoundaries unless z has an even size >= 4 and
/// is circularly nondecreasing with exactly one full turn.
TulipDesign from_boundaries(const std::vector<double>& z);
/// Inverse of from_boundaries: z_0 = x_0 and the remaining points unwrapped.
std::vector<double> to_boundaries(const TulipDesign& design);
EffCBSet to_cbset(const TulipDesign& design);

enum class DesignClass { ES, GES, Tulip };
const char* to_string(DesignClass c);

/// GES iff every overlap is empty; ES iff additionally all primaries are
/// equal within `tolerance` radians.
DesignClass classify(const TulipDesign& design, double tolerance = 1e-9);

/// Number of distinct positivity sets p paths can produce.
int count_feedback_sequences(const BeamDesign& design, int paths);

/// Symmetric tulip: every overlap has width `overlap`, every primary
/// 2pi/b - overlap, beam 0 starting at `rotation`.
TulipDesign symmetric_tulip(int b, double overlap, double rotation = 0.0);
/// GES design with the given arc lengths laid out from `rotation`.
TulipDesign ges_design(const std::vector<double>& lengths, double rotation = 0.0);

}  // namespace tulipba
