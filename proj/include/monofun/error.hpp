// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace monofun {

/// Raised when an argument lies outside the documented domain of an operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operator receives an input that breaks its precondition
/// (for example an unbalanced parent handed to a weight-preserving crossover).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed text input (truth-table files, GP expressions, config files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace monofun
