// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hs {

enum class ErrorKind {
  InvalidArgument,
  OutOfRange,
  NotPositiveDefinite,
  NoConvergence,
  Singular,
  RankDeficient,
  RecurrenceBreakdown,
  Config,
  NullSpaceResidual,
  SingularBoundary,
  PKViolation,
  CoercivityFailure,
  CountMismatch,
  RecoveryResidual,
  Io,
};

const char* error_kind_name(ErrorKind kind);

// Carries the failing quantity: a pivot or sweep index, a residual, a
// condition estimate, whichever the kind calls for.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, double value = 0.0,
        long index = -1)
      : std::runtime_error(message), kind_(kind), value_(value), index_(index) {}

  ErrorKind kind() const { return kind_; }
  double value() const { return value_; }
  long index() const { return index_; }

 private:
  ErrorKind kind_;
  double value_;
  long index_;
};

}  // namespace hs
