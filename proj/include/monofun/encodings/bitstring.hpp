// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "monofun/error.hpp"
#include "monofun/rng.hpp"
#include "monofun/truth_table.hpp"

// Variation operators on raw output vectors, shared by the TT and TTw encodings.
namespace monofun::bitops {

/// Flips one uniformly chosen entry.
inline void flip_random_bit(TruthTable& tt, Rng& rng) { tt.flip(rng.below(tt.size())); }

/// Chooses two positions uniformly and permutes the inclusive segment between
/// them uniformly at random. Preserves the weight of the segment.
inline void shuffle_segment(TruthTable& tt, Rng& rng) {
  std::size_t lo = rng.below(tt.size());
  std::size_t hi = rng.below(tt.size());
  if (lo > hi) std::swap(lo, hi);
  std::vector<std::uint8_t> segment(hi - lo + 1);
  for (std::size_t i = lo; i <= hi; ++i) segment[i - lo] = tt.get(i) ? 1 : 0;
  rng.shuffle(segment.begin(), segment.end());
  for (std::size_t i = lo; i <= hi; ++i) tt.set(i, segment[i - lo] != 0);
}

/// Child takes entries [0, cut) from `a` and [cut, 2^n) from `b`.
inline TruthTable one_point_crossover(const TruthTable& a, const TruthTable& b, std::size_t cut) {
  TruthTable child = b;
  for (std::size_t i = 0; i < cut; ++i) child.set(i, a.get(i));
  return child;
}

/// Each entry drawn from `a` or `b` with probability 1/2.
inline TruthTable uniform_crossover(const TruthTable& a, const TruthTable& b, Rng& rng) {
  TruthTable child = a;
  auto out = child.words();
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::uint64_t take_a = rng();
    out[k] = (wa[k] & take_a) | (wb[k] & ~take_a);
  }
  child.clear_padding();
  return child;
}

/// Position of the rank-th set (value = true) or clear (value = false) entry.
inline std::size_t nth_entry_with_value(const TruthTable& tt, bool value, std::size_t rank) {
  const auto words = tt.words();
  for (std::size_t k = 0; k < words.size(); ++k) {
    std::uint64_t w = value ? words[k] : ~words[k];
    if (k + 1 == words.size()) w &= tt.tail_mask();
    const auto count = static_cast<std::size_t>(std::popcount(w));
    if (rank < count) {
      for (; rank > 0; --rank) w &= w - 1;
      return (k << 6) + static_cast<std::size_t>(std::countr_zero(w));
    }
    rank -= count;
  }
  throw ContractError("nth_entry_with_value: rank exceeds count");
}

/// Uniformly random table with exactly `weight` ones.
inline TruthTable random_fixed_weight(int n, std::size_t weight, Rng& rng) {
  TruthTable tt(n);
  if (weight > tt.size()) throw ParameterError("weight exceeds table size");
  std::vector<std::uint8_t> bits(tt.size(), 0);
  std::fill_n(bits.begin(), weight, 1);
  rng.shuffle(bits.begin(), bits.end());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) tt.set(i, true);
  }
  return tt;
}

inline TruthTable random_table(int n, Rng& rng) {
  TruthTable tt(n);
  for (auto& w : tt.words()) w = rng();
  tt.clear_padding();
  return tt;
}

}  // namespace monofun::bitops
