#include <gtest/gtest.h>

#include <random>

#include "braid/deflate_encoder.hpp"
#include "braid/parsers.hpp"
#include "braid/symbol_stats.hpp"
#include "support.hpp"

namespace braid {
namespace {

using testing::bytes_of;

TokenStore literals(std::string_view s) {
  TokenStore t;
  for (char c : s) t.append_literal(static_cast<uint8_t>(c));
  return t;
}

TEST(GreedyParse, Examples) {
  EXPECT_TRUE(greedy_parse(Bytes{}).empty());

  TokenStore want = literals("ABCDEFGHIJ");
  want.append_match(10, 10);
  EXPECT_EQ(greedy_parse(bytes_of("ABCDEFGHIJABCDEFGHIJ")), want);

  TokenStore ab = literals("AB");
  ab.append_match(6, 2);
  EXPECT_EQ(greedy_parse(bytes_of("ABABABAB")), ab);
}

TEST(GreedyParse, SubRangeReferencesEarlierInput) {
  const Bytes in = bytes_of("hello world, hello world");
  const TokenStore s = greedy_parse(in, ParseRange{13, in.size()});
  EXPECT_EQ(s.start(), 13u);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (Token{11, 13}));
  EXPECT_EQ(expand(s, ByteView(in).first(13)), Bytes(in.begin() + 13, in.end()));
}

TEST(VerifyLenDist, Examples) {
  EXPECT_TRUE(verify_len_dist(bytes_of("ABAB"), 2, 2, 2));
  EXPECT_TRUE(verify_len_dist(bytes_of("AAAA"), 1, 3, 1));
  EXPECT_FALSE(verify_len_dist(bytes_of("ABCD"), 2, 2, 2));
  EXPECT_FALSE(verify_len_dist(bytes_of("ABCD"), 1, 2, 2));  // before start
  EXPECT_FALSE(verify_len_dist(bytes_of("ABCD"), 2, 3, 1));  // past end
}

TEST(CheckStore, RejectsForgedTokens) {
  const Bytes in = bytes_of("ABCDABCE");
  TokenStore bad = literals("ABCD");
  bad.append_match(4, 4);
  EXPECT_THROW(check_store(in, bad), ParseError);
  TokenStore good = literals("ABCD");
  good.append_match(3, 4);
  good.append_literal('E');
  EXPECT_NO_THROW(check_store(in, good));
}

TEST(ComputeStats, Examples) {
  const SymbolStats ten = compute_stats(literals("AAAAAAAAAA"));
  EXPECT_EQ(ten.litlen['A'], 10u);
  EXPECT_EQ(ten.litlen[256], 1u);

  TokenStore ab = literals("AB");
  ab.append_match(6, 2);
  const SymbolStats s = compute_stats(ab);
  EXPECT_EQ(s.litlen[260], 1u);  // length 6
  EXPECT_EQ(s.dist[1], 1u);      // distance 2
  EXPECT_EQ(s.litlen['A'] + s.litlen['B'], 2u);

  const SymbolStats empty = compute_stats(TokenStore{});
  size_t total = 0;
  for (size_t c : empty.litlen) total += c;
  for (size_t c : empty.dist) total += c;
  EXPECT_EQ(total, 1u);
  EXPECT_EQ(empty.litlen[256], 1u);
}

TEST(SymbolCostModel, EntropyWithHalfCountSmoothing) {
  SymbolStats st;
  st.litlen['a'] = 6;
  st.litlen['b'] = 1;
  st.litlen[256] = 1;
  st.dist[0] = 4;
  const SymbolCostModel m = SymbolCostModel::from_stats(st);
  EXPECT_DOUBLE_EQ(m.literal_cost('b'), 3.0);
  EXPECT_DOUBLE_EQ(m.literal_cost('z'), 4.0);  // log2(8 / 0.5)
  EXPECT_DOUBLE_EQ(m.match_cost(3, 1), 4.0 + 0.0);
  EXPECT_DOUBLE_EQ(m.match_cost(11, 5), 4.0 + 1.0 + 3.0 + 1.0);  // extra bits: length 1, dist 1
  for (int l = 3; l <= 258; ++l) EXPECT_GT(m.match_cost(l, 1), 0.0);
}

TEST(ShortestPath, EmptyAndUniformExamples) {
  const auto empty = shortest_path_parse(Bytes{}, {0, 0}, SymbolCostModel::uniform());
  EXPECT_TRUE(empty.store.empty());
  EXPECT_EQ(empty.cost, 0.0);

  const Bytes in = bytes_of("ABABABABAB");
  const auto r = shortest_path_parse(in, {0, in.size()}, SymbolCostModel::uniform());
  TokenStore want = literals("AB");
  want.append_match(8, 2);
  EXPECT_EQ(r.store, want);
  EXPECT_EQ(r.cost, 3.0);
}

TEST(ShortestPath, ExhaustiveBinaryStrings) {
  const SymbolCostModel models[] = {SymbolCostModel::uniform(), SymbolCostModel::fixed_huffman()};
  for (size_t n = 0; n <= 14; ++n) {
    for (uint32_t bits = 0; bits < (1u << n); ++bits) {
      Bytes in(n);
      for (size_t i = 0; i < n; ++i) in[i] = ((bits >> i) & 1u) ? 'B' : 'A';
      for (const SymbolCostModel& m : models) {
        const auto r = shortest_path_parse(in, {0, n}, m);
        ASSERT_EQ(r.cost, testing::exhaustive_min_cost(in, m)) << n << ":" << bits;
        ASSERT_EQ(modelled_cost(r.store, m), r.cost);
        ASSERT_EQ(expand(r.store), in);
      }
    }
  }
}

TEST(ShortestPath, RandomStringsAgainstOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Bytes in = testing::random_bytes(rng, rng() % 65, 2 + trial % 3, 'a');
    const auto fixed = shortest_path_parse(in, {0, in.size()}, SymbolCostModel::fixed_huffman());
    EXPECT_EQ(fixed.cost, testing::exhaustive_min_cost(in, SymbolCostModel::fixed_huffman()));

    // Entropy models are compared with the smallest-distance oracle.
    const SymbolCostModel ent = SymbolCostModel::from_stats(compute_stats(greedy_parse(in))).quantized(10);
    const auto e = shortest_path_parse(in, {0, in.size()}, ent);
    EXPECT_EQ(e.cost, testing::exhaustive_min_cost(in, ent, true));
    EXPECT_EQ(modelled_cost(e.store, ent), e.cost);
  }
}

TEST(ShortestPath, LongRunsStayValid) {
  Bytes in(100000, 'z');
  in[50000] = 'y';
  const auto r = shortest_path_parse(in, {0, in.size()}, SymbolCostModel::fixed_huffman());
  EXPECT_EQ(expand(r.store), in);
  EXPECT_LT(r.store.size(), 1000u);
  EXPECT_DOUBLE_EQ(modelled_cost(r.store, SymbolCostModel::fixed_huffman()), r.cost);
}

TEST(IterateOptimal, SingleIterationAndMonotoneHistory) {
  std::mt19937_64 rng(3);
  const Bytes in = testing::fuzz_input(rng, testing::FuzzKind::kText, 20000);
  OptimalOptions one;
  one.max_iterations = 1;
  const OptimalResult r1 = iterate_optimal(in, {0, in.size()}, one);
  EXPECT_EQ(r1.iterations_run, 1);
  EXPECT_EQ(r1.best_history.size(), 1u);

  const OptimalResult r = iterate_optimal(in, {0, in.size()});
  EXPECT_GE(r.iterations_run, 1);
  EXPECT_LE(r.iterations_run, 100);
  for (size_t i = 1; i < r.best_history.size(); ++i) EXPECT_LE(r.best_history[i], r.best_history[i - 1]);
  EXPECT_LE(r.bits, r.greedy_bits);
  EXPECT_EQ(r.bits, dynamic_block_bits(r.store, 0, r.store.size()));
  EXPECT_EQ(expand(r.store), in);
  EXPECT_THROW((void)iterate_optimal(in, {0, in.size()}, OptimalOptions{0}), std::invalid_argument);
}

TEST(IterateOptimal, NeverWorseThanGreedy) {
  std::mt19937_64 rng(4);
  for (auto kind : testing::kFuzzKinds) {
    const Bytes in = testing::fuzz_input(rng, kind, 15000);
    const OptimalResult r = iterate_optimal(in, {0, in.size()});
    const TokenStore g = greedy_parse(in);
    EXPECT_EQ(r.greedy_bits, dynamic_block_bits(g, 0, g.size()));
    EXPECT_LE(r.bits, r.greedy_bits);
  }
}

TEST(IterateOptimal, Deterministic) {
  std::mt19937_64 rng(5);
  const Bytes in = testing::fuzz_input(rng, testing::FuzzKind::kRepetitive, 30000);
  EXPECT_EQ(iterate_optimal(in, {0, in.size()}).store, iterate_optimal(in, {0, in.size()}).store);
  OptimalOptions p;
  p.perturb = true;
  p.seed = 99;
  const auto a = iterate_optimal(in, {0, in.size()}, p);
  const auto b = iterate_optimal(in, {0, in.size()}, p);
  EXPECT_EQ(a.store, b.store);
  EXPECT_EQ(expand(a.store), in);
}

}  // namespace
}  // namespace braid
