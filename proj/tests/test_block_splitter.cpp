#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "braid/block_splitter.hpp"
#include "braid/deflate_encoder.hpp"
#include "braid/parsers.hpp"
#include "braid/symbol_stats.hpp"
#include "support.hpp"

namespace braid {
namespace {

double shannon(const auto& counts) {
  double total = 0;
  for (size_t c : counts) total += static_cast<double>(c);
  double h = 0;
  for (size_t c : counts) {
    if (c != 0) h -= static_cast<double>(c) * std::log2(static_cast<double>(c) / total);
  }
  return h;
}

TEST(BlockPlan, Ranges) {
  EXPECT_EQ(BlockPlan{}.ranges(7), (std::vector<std::pair<size_t, size_t>>{{0, 7}}));
  const BlockPlan p{{3, 5}};
  EXPECT_EQ(p.block_count(), 3u);
  EXPECT_EQ(p.ranges(9), (std::vector<std::pair<size_t, size_t>>{{0, 3}, {3, 5}, {5, 9}}));
}

TEST(EstimateBlockCost, EntropyPlusExtraBitsPlusHeader) {
  std::mt19937_64 rng(1);
  const Bytes in = testing::fuzz_input(rng, testing::FuzzKind::kText, 5000);
  const TokenStore s = greedy_parse(in);
  for (auto [from, to] : {std::pair<size_t, size_t>{0, s.size()}, {10, 200}, {5, 5}}) {
    const SymbolStats st = compute_stats(s, from, to);
    double extra = 0;
    for (size_t i = from; i < to; ++i) {
      if (!s[i].is_literal()) {
        extra += deflate::length_extra_bits(s[i].litlen) + deflate::distance_extra_bits(s[i].dist);
      }
    }
    const double want = shannon(st.litlen) + shannon(st.dist) + extra +
                        static_cast<double>(dynamic_header_bits(dynamic_trees(st)));
    EXPECT_NEAR(estimate_block_cost(s, from, to), want, 1e-6);
  }
  EXPECT_THROW((void)estimate_block_cost(s, 5, 4), std::out_of_range);
}

TEST(SplitBlocks, TrivialStores) {
  EXPECT_EQ(split_blocks(TokenStore{}).block_count(), 1u);
  const TokenStore one = greedy_parse(testing::bytes_of("x"));
  EXPECT_EQ(split_blocks(one).block_count(), 1u);
  EXPECT_THROW((void)split_blocks(one, 0), std::invalid_argument);
}

TEST(SplitBlocks, FindsBoundaryBetweenDissimilarHalves) {
  std::mt19937_64 rng(2);
  Bytes in = testing::random_bytes(rng, 20000, 4, 'a');
  const Bytes high = testing::random_bytes(rng, 20000, 4, 0xF0);
  in.insert(in.end(), high.begin(), high.end());
  const TokenStore s = greedy_parse(in);
  const BlockPlan plan = split_blocks(s);
  ASSERT_GE(plan.block_count(), 2u);
  EXPECT_LT(plan_cost(s, plan), estimate_block_cost(s, 0, s.size()));
  bool near_boundary = false;
  for (size_t p : plan.split_points) {
    const size_t pos = s.position_of(p);
    if (pos + 300 >= 20000 && pos <= 20300) near_boundary = true;
  }
  EXPECT_TRUE(near_boundary);
}

TEST(SplitBlocks, EverySplitLowersEstimate) {
  std::mt19937_64 rng(3);
  for (auto kind : testing::kFuzzKinds) {
    const Bytes in = testing::fuzz_input(rng, kind, 30000);
    const TokenStore s = greedy_parse(in);
    const BlockPlan plan = split_blocks(s);
    for (size_t i = 0; i < plan.split_points.size(); ++i) {
      EXPECT_GT(plan.split_points[i], 0u);
      EXPECT_LT(plan.split_points[i], s.size());
      if (i > 0) EXPECT_GT(plan.split_points[i], plan.split_points[i - 1]);
    }
    EXPECT_LE(plan_cost(s, plan), estimate_block_cost(s, 0, s.size()) + 1e-9);
  }
}

TEST(SplitBlocks, RespectsBlockBudget) {
  // Alternating regimes invite a split at every boundary.
  std::mt19937_64 rng(4);
  Bytes in;
  for (int seg = 0; seg < 400; ++seg) {
    const Bytes part = seg % 2 == 0 ? testing::random_bytes(rng, 500, 3, 'a') : Bytes(500, 0xEE);
    in.insert(in.end(), part.begin(), part.end());
  }
  const TokenStore s = greedy_parse(in);
  EXPECT_LE(split_blocks(s).block_count(), 100u);
  EXPECT_LE(split_blocks(s, 7).block_count(), 7u);
  EXPECT_EQ(split_blocks(s, 1).block_count(), 1u);
}

TEST(SplitBlocks, Deterministic) {
  std::mt19937_64 rng(5);
  const Bytes in = testing::fuzz_input(rng, testing::FuzzKind::kRepetitive, 40000);
  const TokenStore s = greedy_parse(in);
  EXPECT_EQ(split_blocks(s).split_points, split_blocks(s).split_points);
}

}  // namespace
}  // namespace braid
