// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "monofun/truth_table.hpp"

namespace monofun {

/// W_f(a) = sum_x (-1)^(f(x) xor a.x), indexed like TruthTable.
/// |W_f(a)| <= 2^n, so 32-bit coefficients cover n <= 20.
struct WalshSpectrum {
  int n = 0;
  std::vector<std::int32_t> coeffs;
};

/// Fast in-place butterfly, n * 2^n additions.
inline WalshSpectrum walsh_transform(const TruthTable& tt) {
  WalshSpectrum spec{tt.num_vars(), std::vector<std::int32_t>(tt.size())};
  auto& c = spec.coeffs;
  for (std::size_t x = 0; x < c.size(); ++x) c[x] = tt.get(x) ? -1 : 1;
  for (std::size_t half = 1; half < c.size(); half <<= 1) {
    for (std::size_t block = 0; block < c.size(); block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const std::int32_t u = c[i];
        const std::int32_t v = c[i + half];
        c[i] = u + v;
        c[i + half] = u - v;
      }
    }
  }
  return spec;
}

inline std::int32_t max_abs_coefficient(const WalshSpectrum& spec) {
  std::int32_t m = 0;
  for (auto w : spec.coeffs) m = std::max(m, std::abs(w));
  return m;
}

/// Number of spectrum positions (a = 0 included) attaining max |W_f(a)|.
inline std::size_t max_abs_count(const WalshSpectrum& spec) {
  const std::int32_t m = max_abs_coefficient(spec);
  return static_cast<std::size_t>(
      std::count_if(spec.coeffs.begin(), spec.coeffs.end(), [m](std::int32_t w) { return std::abs(w) == m; }));
}

/// nl_f = 2^(n-1) - max|W_f| / 2. Coefficients share the parity of 2^n, so
/// the result is an integer for n >= 1.
inline std::int64_t nonlinearity(const WalshSpectrum& spec) {
  return (std::int64_t{1} << (spec.n - 1)) - max_abs_coefficient(spec) / 2;
}

inline bool is_balanced(const WalshSpectrum& spec) { return spec.coeffs.at(0) == 0; }

/// Number of output bits to change to reach weight 2^(n-1).
inline std::uint64_t balancedness_deficit(const TruthTable& tt) {
  const auto w = static_cast<std::int64_t>(tt.weight());
  const auto half = static_cast<std::int64_t>(tt.size() / 2);
  return static_cast<std::uint64_t>(w > half ? w - half : half - w);
}

/// Covering radius bound 2^(n-1) - 2^(n/2-1); attained only by bent functions.
inline double covering_radius_bound(int n) {
  return std::ldexp(1.0, n - 1) - std::pow(2.0, n / 2.0 - 1.0);
}

}  // namespace monofun
