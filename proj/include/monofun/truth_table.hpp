// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monofun/error.hpp"

namespace monofun {

inline constexpr int kMaxVariables = 20;

namespace detail {

// Word patterns of the projections x_1 .. x_6 inside a 64-bit block.
inline constexpr std::array<std::uint64_t, 6> kVariablePattern = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

inline void check_num_vars(int n) {
  if (n < 1 || n > kMaxVariables) {
    throw ParameterError("variable count must be in [1, " + std::to_string(kMaxVariables) +
                         "], got " + std::to_string(n));
  }
}

}  // namespace detail

/// Output vector of a Boolean function of n variables, packed 64 entries per word.
///
/// Entry i is f(x) for the input whose binary encoding is i, with bit j of i
/// (least significant first) holding variable x_{j+1}. For n = 2 the entries
/// are f(00), f(x1=1), f(x2=1), f(11), so x_1 reads [0,1,0,1].
/// Bits beyond 2^n in the last word are always zero.
class TruthTable {
 public:
  TruthTable() = default;

  /// All-zeros function of n variables.
  explicit TruthTable(int n) : n_(n) {
    detail::check_num_vars(n);
    words_.assign(word_count(n), 0);
  }

  /// Parses a '0'/'1' string of length 2^n in index order.
  static TruthTable from_string(int n, std::string_view bits) {
    TruthTable tt(n);
    if (bits.size() != tt.size()) {
      throw ParseError("truth table for n=" + std::to_string(n) + " needs " +
                       std::to_string(tt.size()) + " entries, got " + std::to_string(bits.size()));
    }
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        tt.set(i, true);
      } else if (bits[i] != '0') {
        throw ParseError(std::string("unexpected character '") + bits[i] + "' in truth table");
      }
    }
    return tt;
  }

  /// Projection onto x_{index+1}.
  static TruthTable variable(int n, int index) {
    TruthTable tt(n);
    if (index < 0 || index >= n) throw ParameterError("variable index out of range");
    if (index < 6) {
      for (auto& w : tt.words_) w = detail::kVariablePattern[static_cast<std::size_t>(index)];
    } else {
      const std::size_t stride = std::size_t{1} << (index - 6);
      for (std::size_t k = 0; k < tt.words_.size(); ++k) {
        if (k & stride) tt.words_[k] = ~std::uint64_t{0};
      }
    }
    tt.clear_padding();
    return tt;
  }

  static constexpr std::size_t word_count(int n) {
    return n >= 6 ? (std::size_t{1} << (n - 6)) : 1;
  }

  int num_vars() const { return n_; }
  std::size_t size() const { return std::size_t{1} << n_; }

  bool get(std::size_t x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }
  void set(std::size_t x, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (value) {
      words_[x >> 6] |= bit;
    } else {
      words_[x >> 6] &= ~bit;
    }
  }
  void flip(std::size_t x) { words_[x >> 6] ^= std::uint64_t{1} << (x & 63); }

  /// Hamming weight of the output vector.
  std::size_t weight() const {
    std::size_t w = 0;
    for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  /// Mask of valid positions in the last (or only) word.
  std::uint64_t tail_mask() const {
    return n_ >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size()) - 1);
  }

  /// Re-establishes the zero-padding invariant after raw word edits.
  void clear_padding() {
    if (!words_.empty()) words_.back() &= tail_mask();
  }

  TruthTable complement() const {
    TruthTable out = *this;
    for (auto& w : out.words_) w = ~w;
    out.clear_padding();
    return out;
  }

  std::string to_string() const {
    std::string s(size(), '0');
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Writes the two-line text form: n, then 2^n characters '0'/'1'.
inline void write_truth_table(std::ostream& os, const TruthTable& tt) {
  os << tt.num_vars() << '\n' << tt.to_string() << '\n';
}

inline TruthTable read_truth_table(std::istream& is) {
  int n = 0;
  if (!(is >> n)) throw ParseError("truth table file: expected variable count on first line");
  if (n < 1 || n > kMaxVariables) throw ParseError("truth table file: variable count out of range");
  std::string bits;
  if (!(is >> bits)) throw ParseError("truth table file: missing output vector");
  return TruthTable::from_string(n, bits);
}

/// Truth table with inputs relabelled: result(x) = tt(y) where bit perm[j]
/// of y equals bit j of x.
inline TruthTable permute_inputs(const TruthTable& tt, std::span<const int> perm) {
  const int n = tt.num_vars();
  if (static_cast<int>(perm.size()) != n) throw ParameterError("permutation size mismatch");
  TruthTable out(n);
  for (std::size_t x = 0; x < tt.size(); ++x) {
    std::size_t y = 0;
    for (int j = 0; j < n; ++j) {
      if ((x >> j) & 1U) y |= std::size_t{1} << perm[static_cast<std::size_t>(j)];
    }
    out.set(x, tt.get(y));
  }
  return out;
}

}  // namespace monofun
