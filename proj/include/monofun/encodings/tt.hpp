// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "monofun/encodings/bitstring.hpp"
#include "monofun/error.hpp"
#include "monofun/rng.hpp"
#include "monofun/truth_table.hpp"

namespace monofun {

/// Unconstrained truth-table genome: the bitstring is the function.
struct TtGenome {
  TruthTable bits;
  friend bool operator==(const TtGenome&, const TtGenome&) = default;
};

inline TtGenome tt_random(int n, Rng& rng) { return {bitops::random_table(n, rng)}; }

/// Bit mutation or shuffle mutation, chosen with equal probability.
inline TtGenome tt_mutate(const TtGenome& g, Rng& rng) {
  TtGenome out = g;
  if (rng.coin()) {
    bitops::flip_random_bit(out.bits, rng);
  } else {
    bitops::shuffle_segment(out.bits, rng);
  }
  return out;
}

/// One-point or uniform crossover, chosen with equal probability. The
/// one-point cut is uniform over [0, 2^n], so the child may equal `b` (cut 0)
/// or `a` (cut 2^n).
inline TtGenome tt_crossover(const TtGenome& a, const TtGenome& b, Rng& rng) {
  if (a.bits.num_vars() != b.bits.num_vars()) throw ParameterError("tt_crossover: parent length mismatch");
  if (rng.coin()) {
    const std::size_t cut = rng.below(a.bits.size() + 1);
    return {bitops::one_point_crossover(a.bits, b.bits, cut)};
  }
  return {bitops::uniform_crossover(a.bits, b.bits, rng)};
}

inline const TruthTable& decode(const TtGenome& g) { return g.bits; }

class TtEncoding {
 public:
  using Genome = TtGenome;

  explicit TtEncoding(int n) : n_(n) { detail::check_num_vars(n); }

  int num_vars() const { return n_; }
  Genome random(Rng& rng) const { return tt_random(n_, rng); }
  Genome crossover(const Genome& a, const Genome& b, Rng& rng) const { return tt_crossover(a, b, rng); }
  Genome mutate(const Genome& g, Rng& rng) const { return tt_mutate(g, rng); }
  const TruthTable& decode(const Genome& g) const { return g.bits; }
  std::string serialize(const Genome& g) const { return g.bits.to_string(); }

 private:
  int n_;
};

}  // namespace monofun
