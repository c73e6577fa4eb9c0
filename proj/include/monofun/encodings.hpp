// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "monofun/encodings/gp.hpp"
#include "monofun/encodings/tt.hpp"
#include "monofun/encodings/ttw.hpp"
#include "monofun/error.hpp"
#include "monofun/rng.hpp"
#include "monofun/truth_table.hpp"

namespace monofun {

enum class Encoding : std::uint8_t { TT, TTw, GP };

inline std::string_view to_string(Encoding e) {
  switch (e) {
    case Encoding::TT: return "TT";
    case Encoding::TTw: return "TTw";
    case Encoding::GP: return "GP";
  }
  return "?";
}

inline Encoding parse_encoding(std::string_view s) {
  if (s == "TT" || s == "tt") return Encoding::TT;
  if (s == "TTw" || s == "ttw" || s == "TTW") return Encoding::TTw;
  if (s == "GP" || s == "gp") return Encoding::GP;
  throw ParseError("unknown encoding: " + std::string(s));
}

/// What the evolutionary engine needs from a representation.
template <class E>
concept GenomeEncoding = requires(const E& enc, const typename E::Genome& g, Rng& rng) {
  typename E::Genome;
  { enc.num_vars() } -> std::convertible_to<int>;
  { enc.random(rng) } -> std::same_as<typename E::Genome>;
  { enc.crossover(g, g, rng) } -> std::same_as<typename E::Genome>;
  { enc.mutate(g, rng) } -> std::same_as<typename E::Genome>;
  { enc.decode(g) } -> std::convertible_to<TruthTable>;
  { enc.serialize(g) } -> std::same_as<std::string>;
};

static_assert(GenomeEncoding<TtEncoding>);
static_assert(GenomeEncoding<TtwEncoding>);
static_assert(GenomeEncoding<GpEncoding>);

}  // namespace monofun
