// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace krig {

// Bad scalar argument (negative distance, non-positive Bessel argument, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Invalid configuration (kernel parameter constraints, design sizes, ...).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Cholesky failed at every jitter level.
struct IllConditionedError : std::runtime_error {
  explicit IllConditionedError(const std::string& msg, int minor = -1)
      : std::runtime_error(msg), leading_minor(minor) {}
  // 1-based index of the first non-positive pivot, -1 if unknown.
  int leading_minor;
};

// Caller broke an API contract (e.g. evaluation point missing from a sample).
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// A rate study lost too many replications to factorization failures.
struct ExperimentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace krig
