// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "monofun/error.hpp"
#include "monofun/truth_table.hpp"

namespace monofun {

/// Exact integer type for the bound computations (terms reach 2^(2n+1)).
using BigInt = __int128;

inline constexpr int kMaxBoundVariables = 30;

/// Binomial coefficient C(n, k), zero outside 0 <= k <= n.
inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Sum_{i=lo}^{hi} C(n, i); empty when lo > hi.
inline BigInt binomial_sum(int n, int lo, int hi) {
  BigInt s = 0;
  for (int i = lo; i <= hi; ++i) s += binomial(n, i);
  return s;
}

inline std::int64_t to_int64(BigInt v) { return static_cast<std::int64_t>(v); }

// ---------------------------------------------------------------------------
// Threshold and majority functions

/// T_{d,n}(x) = 1 iff w_H(x) >= d, with 1 <= d <= n + 1.
struct ThresholdSpec {
  int n = 0;
  int d = 0;
};

/// MAJ_n: T_{(n+1)/2,n} for odd n, T_{n/2+1,n} for even n.
inline ThresholdSpec majority_spec(int n) { return {n, n / 2 + 1}; }

inline TruthTable threshold_table(const ThresholdSpec& spec) {
  detail::check_num_vars(spec.n);
  if (spec.d < 1 || spec.d > spec.n + 1) {
    throw ParameterError("threshold d must be in [1, n+1], got d=" + std::to_string(spec.d));
  }
  TruthTable tt(spec.n);
  for (std::size_t x = 0; x < tt.size(); ++x) {
    if (std::popcount(x) >= spec.d) tt.set(x, true);
  }
  return tt;
}

/// Closed-form nonlinearity of T_{d,n} for 1 <= d <= n.
inline std::int64_t threshold_nonlinearity_exact(const ThresholdSpec& spec) {
  const int n = spec.n;
  const int d = spec.d;
  if (n < 1 || n > 62) throw ParameterError("threshold nonlinearity: n out of range");
  if (d < 1 || d > n) throw ParameterError("threshold nonlinearity needs 1 <= d <= n");
  if (2 * d == n + 1) return to_int64((BigInt{1} << (n - 1)) - binomial(n - 1, (n - 1) / 2));
  if (2 * d > n + 1) return to_int64(binomial_sum(n, d, n));
  return to_int64(binomial_sum(n, 0, d - 1));
}

/// True when T_{d,n} and T_{n-d+1,n} have the same closed-form nonlinearity.
inline bool symmetry_check(int n, int d) {
  return threshold_nonlinearity_exact({n, d}) == threshold_nonlinearity_exact({n, n - d + 1});
}

// ---------------------------------------------------------------------------
// Upper bounds on the nonlinearity of monotone functions

/// nl_f <= 2^(n-1) - sqrt(M)/2 with M = min(A, B, C) for even n and
/// min(B, C) for odd n. A exists only for even n; B is absent when no k in
/// [1, n/2] has n + k even (n = 2).
struct MonotoneBound {
  int n = 0;
  std::optional<BigInt> a;
  std::optional<BigInt> b;
  BigInt c = 0;
  BigInt m = 0;
  double bound = 0.0;
  /// Largest integer nonlinearity compatible with `bound`.
  std::int64_t bound_floor = 0;
};

namespace detail {

inline BigInt square(BigInt v) { return v * v; }

inline BigInt pow2(int e) { return BigInt{1} << e; }

// The sum over 1 <= j < n/4 is strict: j = n/4 is excluded when 4 | n.
inline BigInt monotone_bound_a(int n) {
  const int h = n / 2;
  BigInt inner = 0;
  for (int j = 1; 4 * j < n; ++j) {
    inner += binomial(h, j) * square(pow2(h) - 2 * binomial_sum(h, 0, j));
  }
  return pow2(n) + 2 * inner + square(pow2(h) - 2);
}

// k runs over integers 1..floor(n/2) with n + k even.
inline std::optional<BigInt> monotone_bound_b(int n) {
  std::optional<BigInt> best;
  for (int k = 1; k <= n / 2; ++k) {
    if ((n + k) % 2 != 0) continue;
    const int up = (n + k) / 2;
    const int down = (n - k) / 2;
    BigInt term = pow2(n + k);
    for (int j = (n + k) / 4 + 1; j <= down; ++j) {
      term += binomial(down, j) * square(pow2(up) - 2 * binomial_sum(up, 0, up - j));
    }
    if (!best || term < *best) best = term;
  }
  return best;
}

inline BigInt monotone_bound_c(int n) {
  const int k = n % 2 == 0 ? n / 2 : (n - 1) / 2;
  return square(2 * binomial(n - 1, k));
}

}  // namespace detail

inline MonotoneBound monotone_upper_bound(int n) {
  if (n < 2 || n > kMaxBoundVariables) {
    throw ParameterError("monotone bound needs 2 <= n <= " + std::to_string(kMaxBoundVariables));
  }
  MonotoneBound out;
  out.n = n;
  out.b = detail::monotone_bound_b(n);
  out.c = detail::monotone_bound_c(n);
  out.m = out.c;
  if (out.b) out.m = std::min(out.m, *out.b);
  if (n % 2 == 0) {
    out.a = detail::monotone_bound_a(n);
    out.m = std::min(out.m, *out.a);
  }
  // M < 2^62 for n <= 30, so the conversion to double is exact enough for
  // the square root (the only floating step).
  out.bound = std::ldexp(1.0, n - 1) - std::sqrt(static_cast<double>(out.m)) / 2.0;
  out.bound_floor = static_cast<std::int64_t>(std::floor(out.bound));
  return out;
}

/// 2^(n-1) - 2^((n-1)/2) for odd n >= 5; 2^(n-1) - 2^(n/2) for even n >= 10.
inline std::int64_t simple_monotone_bound(int n) {
  if (n > 62) throw ParameterError("simple monotone bound: n too large");
  if (n % 2 == 1 && n >= 5) return (std::int64_t{1} << (n - 1)) - (std::int64_t{1} << ((n - 1) / 2));
  if (n % 2 == 0 && n >= 10) return (std::int64_t{1} << (n - 1)) - (std::int64_t{1} << (n / 2));
  throw ParameterError("simple monotone bound holds for odd n >= 5 or even n >= 10, got n=" +
                       std::to_string(n));
}

inline bool has_simple_monotone_bound(int n) {
  return (n % 2 == 1 && n >= 5) || (n % 2 == 0 && n >= 10);
}

// ---------------------------------------------------------------------------
// Literature reference values (not computed), n = 5..14.

inline constexpr int kLiteratureMinN = 5;
inline constexpr int kLiteratureMaxN = 14;

namespace literature {

/// Best known nonlinearity of balanced functions (unrestricted).
inline constexpr std::int64_t kBalanced[] = {12, 26, 56, 116, 240, 492, 992, 2010, 4036, 8120};
/// Best known nonlinearity of arbitrary functions (unrestricted).
inline constexpr std::int64_t kImbalanced[] = {12, 28, 56, 120, 242, 496, 996, 2016, 4040, 8128};
/// General upper bound as tabulated (integer part of the covering radius bound,
/// or tighter known values for odd n).
inline constexpr std::int64_t kGeneralBound[] = {12, 28, 58, 120, 244, 496, 1000, 2016, 4050, 8128};

}  // namespace literature

inline std::optional<std::int64_t> literature_value(const std::int64_t (&row)[10], int n) {
  if (n < kLiteratureMinN || n > kLiteratureMaxN) return std::nullopt;
  return row[n - kLiteratureMinN];
}

}  // namespace monofun
