// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "monofun/error.hpp"
#include "monofun/monotonicity.hpp"
#include "monofun/truth_table.hpp"
#include "monofun/walsh.hpp"

namespace monofun {

/// Normalization of the non-monotone penalty.
///   Fit1: raw violation count
///   Fit2: violations / max_possible
///   Fit3: violations / max_possible^2
enum class PenaltyVariant : std::uint8_t { Fit1, Fit2, Fit3 };

enum class Scenario : std::uint8_t { Balanced, Imbalanced };

inline std::string_view to_string(PenaltyVariant v) {
  switch (v) {
    case PenaltyVariant::Fit1: return "fit1";
    case PenaltyVariant::Fit2: return "fit2";
    case PenaltyVariant::Fit3: return "fit3";
  }
  return "?";
}

inline std::string_view to_string(Scenario s) { return s == Scenario::Balanced ? "balanced" : "imbalanced"; }

inline PenaltyVariant parse_variant(std::string_view s) {
  if (s == "fit1") return PenaltyVariant::Fit1;
  if (s == "fit2") return PenaltyVariant::Fit2;
  if (s == "fit3") return PenaltyVariant::Fit3;
  throw ParseError("unknown penalty variant: " + std::string(s));
}

inline Scenario parse_scenario(std::string_view s) {
  if (s == "balanced" || s == "bal") return Scenario::Balanced;
  if (s == "imbalanced" || s == "imb") return Scenario::Imbalanced;
  throw ParseError("unknown scenario: " + std::string(s));
}

/// Denominator of the penalty variant; 0 stands for "no violation possible".
inline std::uint64_t penalty_denominator(const MonotonicityReport& report, PenaltyVariant variant) {
  switch (variant) {
    case PenaltyVariant::Fit1: return 1;
    case PenaltyVariant::Fit2: return report.max_possible;
    case PenaltyVariant::Fit3: return report.max_possible * report.max_possible;
  }
  return 1;
}

/// Penalty value of the variant. max_possible = 0 forces violations = 0,
/// and the value is then 0 for every variant.
inline double penalty_variant(const MonotonicityReport& report, PenaltyVariant variant) {
  if (report.violations == 0) return 0.0;
  return static_cast<double>(report.violations) / static_cast<double>(penalty_denominator(report, variant));
}

struct FitnessReport {
  int num_vars = 0;
  Scenario scenario = Scenario::Imbalanced;
  PenaltyVariant variant = PenaltyVariant::Fit1;

  std::uint64_t penalty_raw = 0;
  std::uint64_t max_possible = 0;
  double penalty_normalized = 0.0;
  std::uint64_t bal_deficit = 0;
  /// Present only for feasible functions.
  std::optional<std::int64_t> nonlinearity;
  std::optional<std::uint64_t> max_vals_count;
  double fitness = 0.0;

  bool feasible() const { return nonlinearity.has_value(); }

  /// nl * 2^n + (2^n - #max_vals): the feasible fitness scaled by 2^n.
  std::int64_t scaled_spectral_score() const {
    const auto size = std::int64_t{1} << num_vars;
    return *nonlinearity * size + (size - static_cast<std::int64_t>(*max_vals_count));
  }

  friend bool operator==(const FitnessReport&, const FitnessReport&) = default;
};

namespace detail {

inline FitnessReport evaluate_fitness(const TruthTable& tt, Scenario scenario, PenaltyVariant variant) {
  FitnessReport r;
  r.num_vars = tt.num_vars();
  r.scenario = scenario;
  r.variant = scenario == Scenario::Balanced ? PenaltyVariant::Fit1 : variant;

  const MonotonicityReport mono = monotonicity_report(tt);
  r.penalty_raw = mono.violations;
  r.max_possible = mono.max_possible;
  r.penalty_normalized = penalty_variant(mono, r.variant);
  r.bal_deficit = balancedness_deficit(tt);

  const bool feasible = mono.violations == 0 && (scenario == Scenario::Imbalanced || r.bal_deficit == 0);
  const double bal_term = scenario == Scenario::Balanced ? static_cast<double>(r.bal_deficit) : 0.0;
  r.fitness = -r.penalty_normalized - bal_term;
  if (feasible) {
    const WalshSpectrum spec = walsh_transform(tt);
    r.nonlinearity = nonlinearity(spec);
    r.max_vals_count = max_abs_count(spec);
    const double size = static_cast<double>(tt.size());
    r.fitness += static_cast<double>(*r.nonlinearity) + (size - static_cast<double>(*r.max_vals_count)) / size;
  }
  return r;
}

}  // namespace detail

/// -penalty - BAL + [penalty = 0][BAL = 0] * (nl + (2^n - #max_vals) / 2^n),
/// with the raw violation count as penalty.
inline FitnessReport fitness_balanced(const TruthTable& tt) {
  return detail::evaluate_fitness(tt, Scenario::Balanced, PenaltyVariant::Fit1);
}

/// -penalty_variant + [violations = 0] * (nl + (2^n - #max_vals) / 2^n).
inline FitnessReport fitness_imbalanced(const TruthTable& tt, PenaltyVariant variant) {
  return detail::evaluate_fitness(tt, Scenario::Imbalanced, variant);
}

inline FitnessReport evaluate(const TruthTable& tt, Scenario scenario, PenaltyVariant variant) {
  return detail::evaluate_fitness(tt, scenario, variant);
}

/// Exact ordering of two reports from the same scenario and variant
/// (greater is fitter). Infeasible reports compare by the rational penalty
/// violations / denominator + BAL using 128-bit cross multiplication, so
/// distinctions finer than double precision (fit3) are preserved.
inline std::strong_ordering compare_fitness(const FitnessReport& a, const FitnessReport& b) {
  if (a.feasible() != b.feasible()) return a.feasible() ? std::strong_ordering::greater : std::strong_ordering::less;
  if (a.feasible()) return a.scaled_spectral_score() <=> b.scaled_spectral_score();

  using U128 = unsigned __int128;
  auto total = [](const FitnessReport& r, U128& num, U128& den) {
    const MonotonicityReport mono{r.penalty_raw, r.max_possible};
    den = r.penalty_raw == 0 ? 1 : penalty_denominator(mono, r.variant);
    const U128 bal = r.scenario == Scenario::Balanced ? r.bal_deficit : 0;
    num = static_cast<U128>(r.penalty_raw) + bal * den;
  };
  U128 na = 0, da = 1, nb = 0, db = 1;
  total(a, na, da);
  total(b, nb, db);
  const U128 lhs = na * db;
  const U128 rhs = nb * da;
  // Smaller penalty is fitter.
  if (lhs == rhs) return std::strong_ordering::equal;
  return lhs < rhs ? std::strong_ordering::greater : std::strong_ordering::less;
}

}  // namespace monofun
