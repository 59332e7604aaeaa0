// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tulipba Authors

#pragma once

#include <stdexcept>
#include <string>

namespace tulipba {

enum class ErrorCode {
  InvalidAngle,
  InvalidDesign,
  InvalidWeights,
  InvalidResolution,
  InvalidPdf,
  InvalidPolicy,
  InvalidBoundaries,
  InvalidInput,
  NoCandidate,
  CombinatorialLimit,
  NumericalInstability,
  InternalConsistency,
  NotCovering,
  NonConvergence,
  BudgetExceeded,
  Infeasible,
  Schema,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tulipba
