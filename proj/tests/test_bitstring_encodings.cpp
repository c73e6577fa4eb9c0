// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "monofun/encodings.hpp"

using namespace monofun;

namespace {

std::size_t hamming_distance(const TruthTable& a, const TruthTable& b) {
  std::size_t d = 0;
  for (std::size_t k = 0; k < a.words().size(); ++k) d += static_cast<std::size_t>(std::popcount(a.words()[k] ^ b.words()[k]));
  return d;
}

}  // namespace

// --- TT ----------------------------------------------------------------------

TEST(TtEncoding, BitMutationOnZerosSetsExactlyOneBit) {
  Rng rng(1);
  TruthTable tt(2);
  bitops::flip_random_bit(tt, rng);
  EXPECT_EQ(tt.weight(), 1u);
}

TEST(TtEncoding, ShufflePreservesWeight) {
  Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    auto tt = bitops::random_table(6, rng);
    const auto before = tt;
    bitops::shuffle_segment(tt, rng);
    EXPECT_EQ(tt.weight(), before.weight());
  }
}

TEST(TtEncoding, ShuffleOnlyTouchesOneSegment) {
  // Differences between input and output lie inside one contiguous range
  // whose weight is unchanged.
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto tt = bitops::random_table(5, rng);
    const auto before = tt;
    bitops::shuffle_segment(tt, rng);
    std::size_t first = tt.size(), last = 0;
    for (std::size_t i = 0; i < tt.size(); ++i) {
      if (tt.get(i) != before.get(i)) {
        first = std::min(first, i);
        last = i;
      }
    }
    if (first == tt.size()) continue;
    std::size_t w0 = 0, w1 = 0;
    for (std::size_t i = first; i <= last; ++i) {
      w0 += before.get(i);
      w1 += tt.get(i);
    }
    EXPECT_EQ(w0, w1);
  }
}

TEST(TtEncoding, BitMutationPositionsAreUniform) {
  const int n = 4;
  const std::size_t trials = 10000;
  std::vector<std::size_t> hits(16, 0);
  Rng rng(4);
  for (std::size_t t = 0; t < trials; ++t) {
    TruthTable tt(n);
    bitops::flip_random_bit(tt, rng);
    for (std::size_t i = 0; i < tt.size(); ++i) hits[i] += tt.get(i);
  }
  const double p = 1.0 / 16.0;
  const double mean = trials * p;
  const double sigma = std::sqrt(trials * p * (1 - p));
  for (auto h : hits) EXPECT_NEAR(static_cast<double>(h), mean, 3 * sigma);
}

TEST(TtEncoding, MutateKeepsLength) {
  Rng rng(5);
  TtGenome g = tt_random(7, rng);
  for (int i = 0; i < 100; ++i) {
    g = tt_mutate(g, rng);
    EXPECT_EQ(g.bits.size(), 128u);
  }
}

TEST(TtEncoding, CrossoverOfIdenticalParentsIsIdentity) {
  Rng rng(6);
  const TtGenome a = tt_random(6, rng);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(tt_crossover(a, a, rng), a);
}

TEST(TtEncoding, OnePointBoundaryCopiesOneParent) {
  Rng rng(7);
  const auto a = bitops::random_table(5, rng);
  const auto b = bitops::random_table(5, rng);
  EXPECT_EQ(bitops::one_point_crossover(a, b, 0), b);
  EXPECT_EQ(bitops::one_point_crossover(a, b, a.size()), a);
}

TEST(TtEncoding, ChildEntriesComeFromAParent) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const TtGenome a = tt_random(6, rng);
    const TtGenome b = tt_random(6, rng);
    const TtGenome c = tt_crossover(a, b, rng);
    for (std::size_t i = 0; i < c.bits.size(); ++i) {
      ASSERT_TRUE(c.bits.get(i) == a.bits.get(i) || c.bits.get(i) == b.bits.get(i));
    }
  }
}

TEST(TtEncoding, CrossoverRejectsLengthMismatch) {
  Rng rng(9);
  EXPECT_THROW(tt_crossover(tt_random(4, rng), tt_random(5, rng), rng), ParameterError);
}

TEST(TtEncoding, UniformCrossoverWeightIsBinomial) {
  const int n = 6;
  const std::size_t trials = 10000;
  const TruthTable zeros(n);
  const TruthTable ones = zeros.complement();
  Rng rng(10);
  double sum = 0, sum_sq = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double w = static_cast<double>(bitops::uniform_crossover(zeros, ones, rng).weight());
    sum += w;
    sum_sq += w * w;
  }
  const double mean = sum / trials;
  const double var = sum_sq / trials - mean * mean;
  // Binomial(64, 1/2): mean 32, variance 16.
  EXPECT_NEAR(mean, 32.0, 3 * std::sqrt(16.0 / trials));
  EXPECT_NEAR(var, 16.0, 1.0);
}

TEST(TtEncoding, RandomWeightMean) {
  Rng rng(11);
  const std::size_t trials = 10000;
  double sum = 0;
  for (std::size_t t = 0; t < trials; ++t) sum += static_cast<double>(tt_random(6, rng).bits.weight());
  EXPECT_NEAR(sum / trials, 32.0, 3 * std::sqrt(16.0 / trials));
}

// --- TTw ---------------------------------------------------------------------

TEST(TtwEncoding, RandomIsBalanced) {
  Rng rng(20);
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(ttw_random(n, rng).bits().weight(), std::size_t{1} << (n - 1));
}

TEST(TtwEncoding, ConstructorRejectsUnbalancedTable) {
  EXPECT_THROW(TtwGenome(TruthTable(3)), ContractError);
}

TEST(TtwEncoding, TwoBitInversion) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    auto tt = ttw_random(5, rng).bits();
    const auto before = tt;
    two_bit_inversion(tt, rng);
    EXPECT_EQ(tt.weight(), 16u);
    EXPECT_EQ(hamming_distance(tt, before), 2u);
  }
}

TEST(TtwEncoding, MixingMutationKeepsWeight) {
  Rng rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    auto tt = ttw_random(6, rng).bits();
    bitops::shuffle_segment(tt, rng);
    EXPECT_EQ(tt.weight(), 32u);
  }
}

TEST(TtwEncoding, CrossoverOfIdenticalParentsIsIdentity) {
  Rng rng(23);
  const auto a = ttw_random(6, rng);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(ttw_crossover(a, a, rng), a);
}

TEST(TtwEncoding, CrossoverChildIsAlwaysBalanced) {
  Rng rng(24);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const auto a = ttw_random(n, rng);
    const auto b = ttw_random(n, rng);
    ASSERT_EQ(ttw_crossover(a, b, rng).bits().weight(), std::size_t{1} << (n - 1));
  }
}

TEST(TtwEncoding, CrossoverCopiesAgreeingPositionsBeforeQuotaForcing) {
  Rng rng(25);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = ttw_random(6, rng);
    const auto b = ttw_random(6, rng);
    const auto child = ttw_crossover(a, b, rng).bits();
    std::size_t ones = 0, zeros = 0;
    for (std::size_t i = 0; i < child.size(); ++i) {
      if (ones == 32 || zeros == 32) break;  // quota forcing active from here
      if (a.bits().get(i) == b.bits().get(i)) ASSERT_EQ(child.get(i), a.bits().get(i));
      (child.get(i) ? ones : zeros) += 1;
    }
  }
}
