// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "monofun/encodings/bitstring.hpp"
#include "monofun/error.hpp"
#include "monofun/rng.hpp"
#include "monofun/truth_table.hpp"

namespace monofun {

/// Balanced truth-table genome: weight is 2^(n-1) at all times.
class TtwGenome {
 public:
  explicit TtwGenome(TruthTable bits) : bits_(std::move(bits)) {
    if (bits_.weight() != bits_.size() / 2) {
      throw ContractError("TtwGenome requires weight 2^(n-1), got " + std::to_string(bits_.weight()));
    }
  }

  const TruthTable& bits() const { return bits_; }

  friend bool operator==(const TtwGenome&, const TtwGenome&) = default;

 private:
  friend TtwGenome ttw_mutate(const TtwGenome&, Rng&);
  struct Unchecked {};
  TtwGenome(TruthTable bits, Unchecked) : bits_(std::move(bits)) {}

  TruthTable bits_;
};

/// Shuffle of 2^(n-1) ones and 2^(n-1) zeros.
inline TtwGenome ttw_random(int n, Rng& rng) {
  detail::check_num_vars(n);
  return TtwGenome(bitops::random_fixed_weight(n, std::size_t{1} << (n - 1), rng));
}

/// Flips one uniformly chosen 1 and one uniformly chosen 0.
inline void two_bit_inversion(TruthTable& tt, Rng& rng) {
  const std::size_t ones = tt.weight();
  const std::size_t zeros = tt.size() - ones;
  if (ones == 0 || zeros == 0) return;
  const std::size_t up = bitops::nth_entry_with_value(tt, false, rng.below(zeros));
  const std::size_t down = bitops::nth_entry_with_value(tt, true, rng.below(ones));
  tt.flip(up);
  tt.flip(down);
}

/// Two-bit inversion or mixing mutation (segment shuffle), equal odds.
inline TtwGenome ttw_mutate(const TtwGenome& g, Rng& rng) {
  TruthTable bits = g.bits();
  if (rng.coin()) {
    two_bit_inversion(bits, rng);
  } else {
    bitops::shuffle_segment(bits, rng);
  }
  // Both operators preserve weight; skip the recount.
  return TtwGenome(std::move(bits), TtwGenome::Unchecked{});
}

/// Balanced weighted crossover, counter-based quota variant.
///
/// Positions are visited in index order; each takes the value of a uniformly
/// chosen parent until the child holds 2^(n-1) ones (rest forced to 0) or
/// 2^(n-1) zeros (rest forced to 1).
inline TtwGenome ttw_crossover(const TtwGenome& a, const TtwGenome& b, Rng& rng) {
  const TruthTable& pa = a.bits();
  const TruthTable& pb = b.bits();
  if (pa.num_vars() != pb.num_vars()) throw ParameterError("ttw_crossover: parent length mismatch");
  const std::size_t quota = pa.size() / 2;
  TruthTable child(pa.num_vars());
  std::size_t ones = 0;
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    bool v;
    if (ones == quota) {
      v = false;
    } else if (zeros == quota) {
      v = true;
    } else {
      const bool from_a = rng.coin();
      v = from_a ? pa.get(i) : pb.get(i);
    }
    child.set(i, v);
    (v ? ones : zeros) += 1;
  }
  return TtwGenome(std::move(child));
}

class TtwEncoding {
 public:
  using Genome = TtwGenome;

  explicit TtwEncoding(int n) : n_(n) { detail::check_num_vars(n); }

  int num_vars() const { return n_; }
  Genome random(Rng& rng) const { return ttw_random(n_, rng); }
  Genome crossover(const Genome& a, const Genome& b, Rng& rng) const { return ttw_crossover(a, b, rng); }
  Genome mutate(const Genome& g, Rng& rng) const { return ttw_mutate(g, rng); }
  const TruthTable& decode(const Genome& g) const { return g.bits(); }
  std::string serialize(const Genome& g) const { return g.bits().to_string(); }

 private:
  int n_;
};

}  // namespace monofun
