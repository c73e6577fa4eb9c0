// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monofun/error.hpp"
#include "monofun/rng.hpp"
#include "monofun/truth_table.hpp"

namespace monofun {

enum class GpOp : std::uint8_t { Var, Not, And, Or, Xor, If };

inline constexpr int arity(GpOp op) {
  switch (op) {
    case GpOp::Var: return 0;
    case GpOp::Not: return 1;
    case GpOp::And:
    case GpOp::Or:
    case GpOp::Xor: return 2;
    case GpOp::If: return 3;
  }
  return 0;
}

inline constexpr std::string_view op_name(GpOp op) {
  switch (op) {
    case GpOp::Var: return "x";
    case GpOp::Not: return "NOT";
    case GpOp::And: return "AND";
    case GpOp::Or: return "OR";
    case GpOp::Xor: return "XOR";
    case GpOp::If: return "IF";
  }
  return "?";
}

inline constexpr std::array<GpOp, 5> kGpFunctions = {GpOp::Or, GpOp::Xor, GpOp::And, GpOp::If, GpOp::Not};

struct GpNode {
  GpOp op = GpOp::Var;
  /// 0-based variable index, meaningful only for GpOp::Var.
  std::uint8_t var = 0;

  friend bool operator==(const GpNode&, const GpNode&) = default;
};

/// Expression tree stored in prefix order. Depth counts edges: a single
/// leaf has depth 0.
struct GpGenome {
  std::vector<GpNode> nodes;
  friend bool operator==(const GpGenome&, const GpGenome&) = default;
};

struct GpParams {
  int num_vars = 0;
  int max_depth = 8;
  int init_min_depth = 2;
  int init_max_depth = 6;
  /// Attempts before an operator falls back to copying a parent.
  int retry_budget = 10;
};

// ---------------------------------------------------------------------------
// Structure queries

/// Size of the subtree rooted at every node.
inline std::vector<std::size_t> subtree_sizes(const std::vector<GpNode>& nodes) {
  std::vector<std::size_t> sizes(nodes.size());
  std::vector<std::size_t> stack;
  for (std::size_t i = nodes.size(); i-- > 0;) {
    std::size_t s = 1;
    for (int c = 0; c < arity(nodes[i].op); ++c) {
      s += stack.back();
      stack.pop_back();
    }
    sizes[i] = s;
    stack.push_back(s);
  }
  return sizes;
}

/// Depth of every node (root = 0). Requires a well-formed prefix sequence.
inline std::vector<int> node_depths(const std::vector<GpNode>& nodes) {
  std::vector<int> depths(nodes.size());
  std::vector<std::pair<int, int>> open;  // (depth, children still expected)
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int d = open.empty() ? 0 : open.back().first + 1;
    if (!open.empty() && --open.back().second == 0) open.pop_back();
    depths[i] = d;
    if (arity(nodes[i].op) > 0) open.emplace_back(d, arity(nodes[i].op));
  }
  return depths;
}

inline int tree_depth(const std::vector<GpNode>& nodes) {
  const auto d = node_depths(nodes);
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

/// True when the prefix sequence forms exactly one tree and every leaf
/// names a variable below num_vars.
inline bool is_well_formed(const std::vector<GpNode>& nodes, int num_vars) {
  if (nodes.empty()) return false;
  long pending = 1;
  for (const auto& node : nodes) {
    if (pending == 0) return false;
    if (node.op == GpOp::Var && node.var >= num_vars) return false;
    pending += arity(node.op) - 1;
  }
  return pending == 0;
}

inline bool is_valid(const GpGenome& g, const GpParams& params) {
  return is_well_formed(g.nodes, params.num_vars) && tree_depth(g.nodes) <= params.max_depth;
}

/// Start indices of the children of node i.
inline std::array<std::size_t, 3> child_positions(const std::vector<GpNode>& nodes,
                                                  const std::vector<std::size_t>& sizes, std::size_t i) {
  std::array<std::size_t, 3> out{};
  std::size_t pos = i + 1;
  for (int c = 0; c < arity(nodes[i].op); ++c) {
    out[static_cast<std::size_t>(c)] = pos;
    pos += sizes[pos];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text form: prefix notation such as "IF(x1, AND(x2, x3), x4)"

namespace detail {

inline void append_prefix(const std::vector<GpNode>& nodes, std::size_t& pos, std::string& out) {
  const GpNode node = nodes[pos++];
  if (node.op == GpOp::Var) {
    out += 'x';
    out += std::to_string(node.var + 1);
    return;
  }
  out += op_name(node.op);
  out += '(';
  for (int c = 0; c < arity(node.op); ++c) {
    if (c > 0) out += ", ";
    append_prefix(nodes, pos, out);
  }
  out += ')';
}

class PrefixParser {
 public:
  explicit PrefixParser(std::string_view text) : text_(text) {}

  std::vector<GpNode> parse() {
    std::vector<GpNode> nodes;
    parse_node(nodes, 0);
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return nodes;
  }

 private:
  static constexpr int kMaxNesting = 256;

  void parse_node(std::vector<GpNode>& nodes, int nesting) {
    if (nesting > kMaxNesting) fail("expression nested too deeply");
    skip_space();
    std::string word;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) word += text_[pos_++];
    if (word.empty()) fail("expected operator or variable");
    std::string upper;
    for (char ch : word) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));

    if (upper[0] == 'X' && upper.size() > 1 &&
        std::all_of(upper.begin() + 1, upper.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const int index = std::stoi(upper.substr(1));
      if (index < 1 || index > kMaxVariables) fail("variable index out of range: " + word);
      nodes.push_back({GpOp::Var, static_cast<std::uint8_t>(index - 1)});
      return;
    }
    GpOp op;
    if (upper == "NOT") {
      op = GpOp::Not;
    } else if (upper == "AND") {
      op = GpOp::And;
    } else if (upper == "OR") {
      op = GpOp::Or;
    } else if (upper == "XOR") {
      op = GpOp::Xor;
    } else if (upper == "IF") {
      op = GpOp::If;
    } else {
      fail("unknown symbol: " + word);
    }
    nodes.push_back({op, 0});
    expect('(');
    for (int c = 0; c < arity(op); ++c) {
      if (c > 0) expect(',');
      parse_node(nodes, nesting + 1);
    }
    expect(')');
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char ch) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("GP expression, offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string to_prefix_string(const GpGenome& g) {
  std::string out;
  std::size_t pos = 0;
  if (!g.nodes.empty()) detail::append_prefix(g.nodes, pos, out);
  return out;
}

inline GpGenome parse_prefix(std::string_view text) { return {detail::PrefixParser(text).parse()}; }

/// Highest variable index used plus one (the smallest n the tree fits).
inline int min_num_vars(const GpGenome& g) {
  int n = 1;
  for (const auto& node : g.nodes) {
    if (node.op == GpOp::Var) n = std::max(n, node.var + 1);
  }
  return n;
}

// ---------------------------------------------------------------------------
// Decoding

/// Bit-sliced tree evaluator: each variable is a 2^n-bit mask and every
/// operator acts on whole words, so a decode costs size * 2^n / 64 word ops.
class GpEvaluator {
 public:
  explicit GpEvaluator(int n) : n_(n), words_(TruthTable::word_count(n)) {
    detail::check_num_vars(n);
    for (int j = 0; j < n; ++j) variables_.push_back(TruthTable::variable(n, j));
  }

  int num_vars() const { return n_; }

  TruthTable operator()(const GpGenome& g) const {
    if (!is_well_formed(g.nodes, n_)) throw ContractError("GP decode: malformed tree");
    // Reversed prefix order turns evaluation into a postfix stack machine;
    // the first child of a node ends up on top of the stack.
    std::vector<std::uint64_t> stack;
    std::size_t top = 0;
    auto slot = [&](std::size_t k) { return stack.data() + k * words_; };
    for (std::size_t i = g.nodes.size(); i-- > 0;) {
      const GpNode node = g.nodes[i];
      if (node.op == GpOp::Var) {
        if ((top + 1) * words_ > stack.size()) stack.resize((top + 1) * words_ * 2);
        const auto src = variables_[node.var].words();
        std::copy(src.begin(), src.end(), slot(top));
        ++top;
        continue;
      }
      std::uint64_t* first = slot(top - 1);
      switch (node.op) {
        case GpOp::Not:
          for (std::size_t k = 0; k < words_; ++k) first[k] = ~first[k];
          break;
        case GpOp::And: {
          std::uint64_t* second = slot(top - 2);
          for (std::size_t k = 0; k < words_; ++k) second[k] &= first[k];
          --top;
          break;
        }
        case GpOp::Or: {
          std::uint64_t* second = slot(top - 2);
          for (std::size_t k = 0; k < words_; ++k) second[k] |= first[k];
          --top;
          break;
        }
        case GpOp::Xor: {
          std::uint64_t* second = slot(top - 2);
          for (std::size_t k = 0; k < words_; ++k) second[k] ^= first[k];
          --top;
          break;
        }
        case GpOp::If: {
          // IF(c, t, e): t where c holds, e elsewhere.
          const std::uint64_t* then_part = slot(top - 2);
          std::uint64_t* else_part = slot(top - 3);
          for (std::size_t k = 0; k < words_; ++k) {
            else_part[k] = (first[k] & then_part[k]) | (~first[k] & else_part[k]);
          }
          top -= 2;
          break;
        }
        case GpOp::Var: break;
      }
    }
    TruthTable out(n_);
    std::copy(stack.begin(), stack.begin() + static_cast<std::ptrdiff_t>(words_), out.words().begin());
    out.clear_padding();
    return out;
  }

 private:
  int n_;
  std::size_t words_;
  std::vector<TruthTable> variables_;
};

inline TruthTable decode(const GpGenome& g, int n) { return GpEvaluator(n)(g); }

// ---------------------------------------------------------------------------
// Initialization

namespace detail {

inline GpNode random_terminal(int n, Rng& rng) {
  return {GpOp::Var, static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(n)))};
}

/// Appends a random tree of depth <= depth_limit. `full` forces functions
/// until the limit; otherwise each node is drawn uniformly from the
/// combined set of functions and terminals.
inline void grow_tree(std::vector<GpNode>& out, int depth_limit, bool full, int n, Rng& rng) {
  bool terminal = depth_limit == 0;
  if (!terminal && !full) {
    terminal = rng.below(static_cast<std::uint64_t>(n) + kGpFunctions.size()) < static_cast<std::uint64_t>(n);
  }
  if (terminal) {
    out.push_back(random_terminal(n, rng));
    return;
  }
  const GpOp op = kGpFunctions[rng.below(kGpFunctions.size())];
  out.push_back({op, 0});
  for (int c = 0; c < arity(op); ++c) grow_tree(out, depth_limit - 1, full, n, rng);
}

}  // namespace detail

/// Ramped half-and-half: depth uniform in [init_min_depth, init_max_depth]
/// (clamped to max_depth), full or grow with equal probability.
inline GpGenome gp_random(const GpParams& params, Rng& rng) {
  const int hi = std::min(params.init_max_depth, params.max_depth);
  const int lo = std::min(params.init_min_depth, hi);
  const int depth = static_cast<int>(rng.between(lo, hi));
  GpGenome g;
  detail::grow_tree(g.nodes, depth, rng.coin(), params.num_vars, rng);
  return g;
}

// ---------------------------------------------------------------------------
// Variation

namespace detail {

/// `a` with the subtree at ia replaced by the subtree of `b` at ib.
inline GpGenome splice(const GpGenome& a, const std::vector<std::size_t>& sizes_a, std::size_t ia,
                       const GpGenome& b, const std::vector<std::size_t>& sizes_b, std::size_t ib) {
  GpGenome out;
  out.nodes.reserve(a.nodes.size() - sizes_a[ia] + sizes_b[ib]);
  out.nodes.insert(out.nodes.end(), a.nodes.begin(), a.nodes.begin() + static_cast<std::ptrdiff_t>(ia));
  out.nodes.insert(out.nodes.end(), b.nodes.begin() + static_cast<std::ptrdiff_t>(ib),
                   b.nodes.begin() + static_cast<std::ptrdiff_t>(ib + sizes_b[ib]));
  out.nodes.insert(out.nodes.end(), a.nodes.begin() + static_cast<std::ptrdiff_t>(ia + sizes_a[ia]), a.nodes.end());
  return out;
}

/// Node pairs sharing the same position. With `same_arity` set, descent
/// stops below any pair whose arities differ (the common region used by
/// one-point and uniform crossover); otherwise descent continues through
/// every child index present in both trees (context-preserving pairs).
inline void aligned_pairs(const GpGenome& a, const std::vector<std::size_t>& sa, std::size_t ia,
                          const GpGenome& b, const std::vector<std::size_t>& sb, std::size_t ib,
                          bool same_arity, std::vector<std::pair<std::size_t, std::size_t>>& out) {
  out.emplace_back(ia, ib);
  const int ka = arity(a.nodes[ia].op);
  const int kb = arity(b.nodes[ib].op);
  if (same_arity && ka != kb) return;
  const auto ca = child_positions(a.nodes, sa, ia);
  const auto cb = child_positions(b.nodes, sb, ib);
  for (int c = 0; c < std::min(ka, kb); ++c) {
    aligned_pairs(a, sa, ca[static_cast<std::size_t>(c)], b, sb, cb[static_cast<std::size_t>(c)], same_arity, out);
  }
}

inline void uniform_build(const GpGenome& a, const std::vector<std::size_t>& sa, std::size_t ia,
                          const GpGenome& b, const std::vector<std::size_t>& sb, std::size_t ib, Rng& rng,
                          std::vector<GpNode>& out) {
  const int ka = arity(a.nodes[ia].op);
  const int kb = arity(b.nodes[ib].op);
  if (ka != kb) {
    // Boundary of the common region: whole subtrees are exchanged.
    const bool from_a = rng.coin();
    const auto& src = from_a ? a : b;
    const std::size_t at = from_a ? ia : ib;
    const std::size_t len = from_a ? sa[ia] : sb[ib];
    out.insert(out.end(), src.nodes.begin() + static_cast<std::ptrdiff_t>(at),
               src.nodes.begin() + static_cast<std::ptrdiff_t>(at + len));
    return;
  }
  // Inside the common region only the node label is exchanged.
  out.push_back(rng.coin() ? a.nodes[ia] : b.nodes[ib]);
  const auto ca = child_positions(a.nodes, sa, ia);
  const auto cb = child_positions(b.nodes, sb, ib);
  for (int c = 0; c < ka; ++c) {
    uniform_build(a, sa, ca[static_cast<std::size_t>(c)], b, sb, cb[static_cast<std::size_t>(c)], rng, out);
  }
}

}  // namespace detail

enum class GpCrossover : std::uint8_t { Subtree, Uniform, SizeFair, OnePoint, ContextPreserving };

inline constexpr std::array<GpCrossover, 5> kGpCrossovers = {
    GpCrossover::Subtree, GpCrossover::Uniform, GpCrossover::SizeFair, GpCrossover::OnePoint,
    GpCrossover::ContextPreserving};

/// One application of a named crossover; no depth check.
inline GpGenome gp_crossover_once(GpCrossover kind, const GpGenome& a, const GpGenome& b, Rng& rng) {
  const auto sa = subtree_sizes(a.nodes);
  const auto sb = subtree_sizes(b.nodes);
  switch (kind) {
    case GpCrossover::Subtree: {
      const std::size_t ia = rng.below(a.nodes.size());
      const std::size_t ib = rng.below(b.nodes.size());
      return detail::splice(a, sa, ia, b, sb, ib);
    }
    case GpCrossover::Uniform: {
      GpGenome out;
      detail::uniform_build(a, sa, 0, b, sb, 0, rng, out.nodes);
      return out;
    }
    case GpCrossover::SizeFair: {
      // Donor subtrees are limited to at most 1 + 2 * (size removed).
      const std::size_t ia = rng.below(a.nodes.size());
      const std::size_t limit = 1 + 2 * sa[ia];
      std::vector<std::size_t> candidates;
      for (std::size_t j = 0; j < sb.size(); ++j) {
        if (sb[j] <= limit) candidates.push_back(j);
      }
      const std::size_t ib = candidates[rng.below(candidates.size())];
      return detail::splice(a, sa, ia, b, sb, ib);
    }
    case GpCrossover::OnePoint:
    case GpCrossover::ContextPreserving: {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      detail::aligned_pairs(a, sa, 0, b, sb, 0, kind == GpCrossover::OnePoint, pairs);
      const auto [ia, ib] = pairs[rng.below(pairs.size())];
      return detail::splice(a, sa, ia, b, sb, ib);
    }
  }
  return a;
}

/// Picks one of the five crossovers uniformly; a child deeper than
/// max_depth is discarded and the draw repeated, up to retry_budget times,
/// after which a copy of `a` is returned.
inline GpGenome gp_crossover(const GpGenome& a, const GpGenome& b, const GpParams& params, Rng& rng) {
  for (int attempt = 0; attempt < params.retry_budget; ++attempt) {
    const GpCrossover kind = kGpCrossovers[rng.below(kGpCrossovers.size())];
    GpGenome child = gp_crossover_once(kind, a, b, rng);
    if (tree_depth(child.nodes) <= params.max_depth) return child;
  }
  return a;
}

/// Subtree mutation: a uniformly chosen node is replaced by a grown subtree
/// of depth at most uniform[0, init_max_depth]. Same retry rule as crossover.
inline GpGenome gp_mutate(const GpGenome& g, const GpParams& params, Rng& rng) {
  const auto sizes = subtree_sizes(g.nodes);
  for (int attempt = 0; attempt < params.retry_budget; ++attempt) {
    const std::size_t at = rng.below(g.nodes.size());
    GpGenome fresh;
    const int limit = static_cast<int>(rng.between(0, params.init_max_depth));
    detail::grow_tree(fresh.nodes, limit, false, params.num_vars, rng);
    const auto fresh_sizes = subtree_sizes(fresh.nodes);
    GpGenome child = detail::splice(g, sizes, at, fresh, fresh_sizes, 0);
    if (tree_depth(child.nodes) <= params.max_depth) return child;
  }
  return g;
}

class GpEncoding {
 public:
  using Genome = GpGenome;

  explicit GpEncoding(GpParams params) : params_(params), evaluator_(params.num_vars) {
    if (params.max_depth < 0 || params.init_min_depth < 0 || params.init_min_depth > params.init_max_depth ||
        params.retry_budget < 1) {
      throw ParameterError("invalid GP parameters");
    }
  }

  int num_vars() const { return params_.num_vars; }
  const GpParams& params() const { return params_; }

  Genome random(Rng& rng) const { return gp_random(params_, rng); }
  Genome crossover(const Genome& a, const Genome& b, Rng& rng) const { return gp_crossover(a, b, params_, rng); }
  Genome mutate(const Genome& g, Rng& rng) const { return gp_mutate(g, params_, rng); }
  TruthTable decode(const Genome& g) const { return evaluator_(g); }
  std::string serialize(const Genome& g) const { return to_prefix_string(g); }

 private:
  GpParams params_;
  GpEvaluator evaluator_;
};

}  // namespace monofun
