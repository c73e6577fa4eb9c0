// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>

#include "monofun/truth_table.hpp"

namespace monofun {

struct MonotonicityReport {
  /// Pairs (u, v) with f(u) = 1, v = u with one 0-bit raised to 1, f(v) = 0.
  std::uint64_t violations = 0;
  /// Sum over the support of the number of 0-bits: the largest value
  /// `violations` can take for this support.
  std::uint64_t max_possible = 0;

  bool monotone() const { return violations == 0; }

  friend bool operator==(const MonotonicityReport&, const MonotonicityReport&) = default;
};

/// Counts upward one-bit successors of 1-entries that drop to 0.
///
/// Each variable is handled word-parallel: for x_{j+1} with j < 6 the
/// successor of position p lives in the same word at p + 2^j; for j >= 6 it
/// lives 2^(j-6) words further on.
inline MonotonicityReport monotonicity_report(const TruthTable& tt) {
  const int n = tt.num_vars();
  const auto words = tt.words();
  std::uint64_t violations = 0;
  std::uint64_t ones_on_variables = 0;

  for (int j = 0; j < n; ++j) {
    if (j < 6) {
      const std::uint64_t high = detail::kVariablePattern[static_cast<std::size_t>(j)];
      const unsigned shift = 1U << j;
      for (const std::uint64_t w : words) {
        violations += static_cast<std::uint64_t>(std::popcount(w & ~(w >> shift) & ~high));
        ones_on_variables += static_cast<std::uint64_t>(std::popcount(w & high));
      }
    } else {
      const std::size_t stride = std::size_t{1} << (j - 6);
      for (std::size_t k = 0; k < words.size(); ++k) {
        if (k & stride) {
          ones_on_variables += static_cast<std::uint64_t>(std::popcount(words[k]));
        } else {
          violations += static_cast<std::uint64_t>(std::popcount(words[k] & ~words[k + stride]));
        }
      }
    }
  }

  const auto weight = static_cast<std::uint64_t>(tt.weight());
  return {violations, static_cast<std::uint64_t>(n) * weight - ones_on_variables};
}

}  // namespace monofun
