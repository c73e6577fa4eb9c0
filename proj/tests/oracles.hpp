// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference implementations used only by the tests. None of
// them shares code paths with the library routines they check.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "monofun/encodings/gp.hpp"
#include "monofun/truth_table.hpp"

namespace monofun::oracle {

/// W_f(a) straight from the definition, O(4^n).
inline std::vector<std::int32_t> naive_walsh(const TruthTable& tt) {
  const std::size_t size = tt.size();
  std::vector<std::int32_t> out(size);
  for (std::size_t a = 0; a < size; ++a) {
    std::int32_t sum = 0;
    for (std::size_t x = 0; x < size; ++x) {
      const int dot = std::popcount(a & x) & 1;
      sum += ((tt.get(x) ? 1 : 0) ^ dot) ? -1 : 1;
    }
    out[a] = sum;
  }
  return out;
}

/// u <= v (coordinate-wise) implies f(u) <= f(v), checked over all
/// comparable pairs.
inline bool is_monotone_pairwise(const TruthTable& tt) {
  const std::size_t size = tt.size();
  for (std::size_t u = 0; u < size; ++u) {
    if (!tt.get(u)) continue;
    for (std::size_t v = 0; v < size; ++v) {
      if ((u & v) == u && !tt.get(v)) return false;
    }
  }
  return true;
}

/// The three-step penalty procedure, one input at a time.
inline std::uint64_t naive_violations(const TruthTable& tt) {
  std::uint64_t count = 0;
  const int n = tt.num_vars();
  for (std::size_t u = 0; u < tt.size(); ++u) {
    if (!tt.get(u)) continue;
    for (int j = 0; j < n; ++j) {
      if ((u >> j) & 1U) continue;
      if (!tt.get(u | (std::size_t{1} << j))) ++count;
    }
  }
  return count;
}

inline std::uint64_t naive_max_possible(const TruthTable& tt) {
  std::uint64_t count = 0;
  for (std::size_t u = 0; u < tt.size(); ++u) {
    if (tt.get(u)) count += static_cast<std::uint64_t>(tt.num_vars() - std::popcount(u));
  }
  return count;
}

/// Recursive interpretation of a GP tree on one input point.
inline bool eval_point(const std::vector<GpNode>& nodes, std::size_t& pos, std::size_t x) {
  const GpNode node = nodes[pos++];
  switch (node.op) {
    case GpOp::Var: return (x >> node.var) & 1U;
    case GpOp::Not: return !eval_point(nodes, pos, x);
    case GpOp::And: {
      const bool a = eval_point(nodes, pos, x);
      const bool b = eval_point(nodes, pos, x);
      return a && b;
    }
    case GpOp::Or: {
      const bool a = eval_point(nodes, pos, x);
      const bool b = eval_point(nodes, pos, x);
      return a || b;
    }
    case GpOp::Xor: {
      const bool a = eval_point(nodes, pos, x);
      const bool b = eval_point(nodes, pos, x);
      return a != b;
    }
    case GpOp::If: {
      const bool c = eval_point(nodes, pos, x);
      const bool t = eval_point(nodes, pos, x);
      const bool e = eval_point(nodes, pos, x);
      return c ? t : e;
    }
  }
  return false;
}

inline TruthTable pointwise_decode(const GpGenome& g, int n) {
  TruthTable tt(n);
  for (std::size_t x = 0; x < tt.size(); ++x) {
    std::size_t pos = 0;
    tt.set(x, eval_point(g.nodes, pos, x));
  }
  return tt;
}

/// Depth with the root at 0, by recursion.
inline int recursive_depth(const std::vector<GpNode>& nodes, std::size_t& pos) {
  const int k = arity(nodes[pos++].op);
  int d = 0;
  for (int c = 0; c < k; ++c) d = std::max(d, 1 + recursive_depth(nodes, pos));
  return d;
}

}  // namespace monofun::oracle
