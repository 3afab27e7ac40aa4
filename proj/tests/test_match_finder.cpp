#include <gtest/gtest.h>

#include <random>
#include <set>

#include "braid/match_finder.hpp"
#include "braid/parsers.hpp"
#include "support.hpp"

namespace braid {
namespace {

using testing::brute_longest_match;
using testing::bytes_of;

constexpr TieBreak kLargest = TieBreak::kLargestDistance;
constexpr TieBreak kSmallest = TieBreak::kSmallestDistance;

TEST(UpdateHash, IdenticalBytesShareOneChain) {
  const Bytes in = bytes_of("AAAAAAAAAAAA");
  MatchFinder f(in, false);
  for (size_t p = 0; p < 10; ++p) f.update_hash(p);
  std::vector<int64_t> visited;
  for (int64_t p = f.head(f.hash_at(0)); p >= 0; p = f.prev(static_cast<size_t>(p))) visited.push_back(p);
  EXPECT_EQ(visited, (std::vector<int64_t>{9, 8, 7, 6, 5, 4, 3, 2, 1, 0}));
}

TEST(UpdateHash, NewestIsHead) {
  const Bytes in = bytes_of("xyzxyzxyz");
  MatchFinder f(in, false);
  for (size_t p = 0; p < in.size(); ++p) {
    f.update_hash(p);
    EXPECT_EQ(f.head(f.hash_at(p)), static_cast<int64_t>(p));
  }
  EXPECT_THROW(f.update_hash(3), std::logic_error);
}

TEST(UpdateHash, EveryPositionReachableFromItsHead) {
  std::mt19937_64 rng(11);
  const Bytes in = testing::random_bytes(rng, 1024, 4);
  const MatchFinder f(in);
  for (size_t p = 0; p < in.size(); ++p) {
    bool found = false;
    int64_t last = std::numeric_limits<int64_t>::max();
    for (int64_t q = f.head(f.hash_at(p)); q >= 0; q = f.prev(static_cast<size_t>(q))) {
      ASSERT_LT(q, last);  // strictly decreasing
      last = q;
      if (q == static_cast<int64_t>(p)) found = true;
    }
    EXPECT_TRUE(found) << p;
  }
}

TEST(UpdateHash, ChainLinksStayInsideWindow) {
  Bytes in(100000, 'q');
  const MatchFinder f(in);
  for (size_t p = 0; p < in.size(); p += 997) {
    const int64_t q = f.prev(p);
    if (q >= 0) {
      EXPECT_LT(q, static_cast<int64_t>(p));
      EXPECT_LE(static_cast<int64_t>(p) - q, deflate::kWindowSize);
    }
  }
}

TEST(FindLongestMatch, TableExamples) {
  const Bytes two = bytes_of("ABCDEFGHIJABCDEFGHIJ");
  EXPECT_EQ(MatchFinder(two).find_longest_match(10, 258, kLargest), (Match{10, 10}));

  // Distance 1 reaches 4 bytes, distance 10 reaches 5.
  const Bytes three = bytes_of("AAAAFxyzwAAAAAFq");
  EXPECT_EQ(MatchFinder(three).find_longest_match(10, 258, kLargest), (Match{5, 10}));

  // Distances 8, 9 and 10 all reach 3 bytes.
  const Bytes four = bytes_of("AAAAAbcdefAAAD");
  EXPECT_EQ(MatchFinder(four).find_longest_match(10, 258, kLargest), (Match{3, 10}));
  EXPECT_EQ(MatchFinder(four).find_longest_match(10, 258, kSmallest), (Match{3, 8}));
}

TEST(FindLongestMatch, DegenerateQueries) {
  const Bytes in = bytes_of("ABCABCAB");
  const MatchFinder f(in);
  EXPECT_EQ(f.find_longest_match(0, 258, kLargest), Match{});
  EXPECT_EQ(f.find_longest_match(6, 258, kLargest), Match{});  // two bytes left
  EXPECT_EQ(f.find_longest_match(3, 2, kLargest), Match{});    // limit below 3
  EXPECT_EQ(f.find_longest_match(3, 4, kLargest), (Match{4, 3}));
}

TEST(FindLongestMatch, LongRunsCapAt258) {
  const Bytes in(5000, 0);
  const MatchFinder f(in);
  EXPECT_EQ(f.find_longest_match(1, 258, kSmallest), (Match{258, 1}));
  EXPECT_EQ(f.find_longest_match(4000, 258, kSmallest), (Match{258, 1}));
  const Match far = f.find_longest_match(4000, 258, kLargest);
  EXPECT_EQ(far.length, 258);
  EXPECT_GE(far.dist, 1);
  EXPECT_LE(far.dist, 4000);
}

class OracleTest : public ::testing::TestWithParam<TieBreak> {};

TEST_P(OracleTest, MatchesBruteForceScan) {
  const TieBreak tie = GetParam();
  std::mt19937_64 rng(tie == kLargest ? 1 : 2);
  for (int trial = 0; trial < 300; ++trial) {
    const int alphabet = 2 + trial % 4;
    const Bytes in = testing::random_bytes(rng, 1 + rng() % 256, alphabet, 'A');
    const MatchFinder f(in);
    for (size_t p = 0; p < in.size(); ++p) {
      Sublen sublen{};
      const Match got = f.find_longest_match(p, 258, tie, &sublen);
      const Match want = brute_longest_match(in, p, 258, tie);
      ASSERT_EQ(got, want) << "trial " << trial << " pos " << p;
      for (int l = deflate::kMinMatch; l <= got.length; ++l) {
        // sublen[l] is the smallest distance reaching at least l bytes.
        int smallest = 0;
        for (size_t d = 1; d <= p && smallest == 0; ++d) {
          if (verify_len_dist(in, p, l, static_cast<int>(d))) smallest = static_cast<int>(d);
        }
        ASSERT_EQ(sublen[static_cast<size_t>(l)], smallest) << "trial " << trial << " pos " << p << " l " << l;
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(TieBreaks, OracleTest, ::testing::Values(kLargest, kSmallest));

TEST(LongestMatchCache, HitsEqualFreshSearches) {
  std::mt19937_64 rng(5);
  const Bytes in = testing::fuzz_input(rng, testing::FuzzKind::kText, 20000);
  const MatchFinder f(in);
  LongestMatchCache cache(0, in.size(), kSmallest);
  for (int round = 0; round < 2; ++round) {
    for (size_t p = 0; p < in.size(); p += 3) {
      const int limit = static_cast<int>(std::min<size_t>(258, in.size() - p));
      Sublen a{};
      Sublen b{};
      const Match cached = f.find_longest_match(p, limit, kSmallest, &a, &cache);
      const Match fresh = f.find_longest_match(p, limit, kSmallest, &b);
      ASSERT_EQ(cached, fresh);
      for (int l = 3; l <= fresh.length; ++l) ASSERT_EQ(a[static_cast<size_t>(l)], b[static_cast<size_t>(l)]);
    }
  }
  EXPECT_GT(cache.hits(), 0u);
  // Another limit misses rather than answering wrongly.
  Match m;
  EXPECT_FALSE(cache.lookup(0, 7, m, nullptr));
  LongestMatchCache other(0, in.size(), kLargest);
  EXPECT_THROW((void)f.find_longest_match(10, 258, kSmallest, nullptr, &other), std::invalid_argument);
}

TEST(LongestMatchCache, ParseIsUnchangedByCache) {
  std::mt19937_64 rng(6);
  for (auto kind : testing::kFuzzKinds) {
    const Bytes in = testing::fuzz_input(rng, kind, 30000);
    const MatchFinder f(in);
    LongestMatchCache cache(0, in.size(), kLargest);
    EXPECT_EQ(greedy_parse(f, {0, in.size()}, {}, &cache), greedy_parse(f, {0, in.size()}, {}));
    const SymbolCostModel model = SymbolCostModel::fixed_huffman();
    LongestMatchCache sp_cache(0, in.size(), kSmallest);
    const auto with = shortest_path_parse(f, {0, in.size()}, model, &sp_cache);
    const auto again = shortest_path_parse(f, {0, in.size()}, model, &sp_cache);
    const auto without = shortest_path_parse(f, {0, in.size()}, model);
    EXPECT_EQ(with.store, without.store);
    EXPECT_EQ(again.store, without.store);
  }
}

TEST(FindLongestMatch, WindowBound) {
  std::mt19937_64 rng(8);
  Bytes in = testing::random_bytes(rng, 40000);
  // The second copy of a block sits further back than the window.
  std::copy_n(in.begin(), 1000, in.begin() + 36000);
  const MatchFinder f(in);
  for (size_t p = 36000; p < 36100; ++p) {
    const Match m = f.find_longest_match(p, 258, kLargest);
    EXPECT_LE(m.dist, deflate::kWindowSize);
    EXPECT_LE(static_cast<size_t>(m.dist), p);
  }
  Bytes near = in;
  std::copy_n(near.begin() + 4000, 1000, near.begin() + 36000);
  const MatchFinder g(near);
  EXPECT_EQ(g.find_longest_match(36000, 258, kLargest), (Match{258, 32000}));
}

TEST(LengthScore, Policies) {
  EXPECT_EQ(length_score(10, 10), 10);
  EXPECT_EQ(length_score(0, 0), 0);
  EXPECT_EQ(length_score(5, 2048, ScorePolicy::kDistancePenalty), 4);
  EXPECT_EQ(length_score(5, 1024, ScorePolicy::kDistancePenalty), 5);
  EXPECT_EQ(length_score(5, 2048, ScorePolicy::kIdentity), 5);
}

TEST(LengthScore, PenaltyShrinksFarGreedyMatches) {
  std::mt19937_64 rng(9);
  Bytes in = testing::random_bytes(rng, 3000);
  std::copy_n(in.begin(), 5, in.begin() + 2500);  // a 5-byte match 2500 back
  const TokenStore plain = greedy_parse(in);
  const TokenStore penal = greedy_parse(in, ParsePolicy{kLargest, ScorePolicy::kDistancePenalty});
  auto match_at = [](const TokenStore& s, size_t pos) {
    for (size_t i = 0; i < s.size(); ++i) {
      if (s.position_of(i) == pos) return s[i];
    }
    return Token{};
  };
  EXPECT_EQ(match_at(plain, 2500), (Token{5, 2500}));
  EXPECT_EQ(match_at(penal, 2500), (Token{4, 2500}));
  EXPECT_EQ(expand(penal), in);
}

}  // namespace
}  // namespace braid
