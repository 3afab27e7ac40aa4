#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "braid/lz_store.hpp"
#include "braid/match_finder.hpp"
#include "braid/symbol_stats.hpp"

namespace braid {

/// Half-open input slice [instart, inend) a parser covers.
struct ParseRange {
  size_t instart = 0;
  size_t inend = 0;
};

struct ParsePolicy {
  TieBreak tie = TieBreak::kLargestDistance;
  ScorePolicy score = ScorePolicy::kIdentity;
};

/// Raised when a parser produces a token that does not reproduce the input.
class ParseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Per-symbol bit costs for the shortest-path parser.
class SymbolCostModel {
 public:
  /// -log2(count / total) per symbol; unseen symbols cost as if counted 1/2.
  /// Length and distance extra bits are added on top.
  static SymbolCostModel from_stats(const SymbolStats& stats);
  /// Code lengths of the fixed Huffman code plus extra bits.
  static SymbolCostModel fixed_huffman();
  /// Every token costs one bit (minimises the token count).
  static SymbolCostModel uniform();

  /// Copy with every symbol cost rounded to a multiple of 2^-frac_bits, so
  /// sums of costs are exact in double precision.
  [[nodiscard]] SymbolCostModel quantized(int frac_bits) const;

  [[nodiscard]] double literal_cost(uint8_t byte) const { return litlen_[byte]; }
  [[nodiscard]] double match_cost(int length, int dist) const;
  /// Cost of a token in (litlen, dist) form; dist == 0 is a literal.
  [[nodiscard]] double cost(int litlen, int dist) const {
    return dist == 0 ? literal_cost(static_cast<uint8_t>(litlen)) : match_cost(litlen, dist);
  }
  /// Smallest possible cost of any match token.
  [[nodiscard]] double min_match_cost() const;

 private:
  std::array<double, deflate::kNumLitLenSymbols> litlen_{};
  std::array<double, deflate::kNumDistSymbols> dist_{};
  bool extra_bits_ = true;
};

/// True iff input[pos, pos+length) equals the bytes `dist` back under
/// overlap-copy semantics (and the reference stays inside the input).
[[nodiscard]] bool verify_len_dist(ByteView input, size_t pos, int length, int dist);

/// Throws ParseError unless every token of `store` matches `input`.
void check_store(ByteView input, const TokenStore& store);

/// Greedy parse: longest match at each position, scored by the policy;
/// a score of at least 3 emits (score, dist), otherwise a literal.
/// The finder must index `input` at least up to range.inend.
[[nodiscard]] TokenStore greedy_parse(const MatchFinder& finder, ParseRange range, ParsePolicy policy = {},
                                      LongestMatchCache* cache = nullptr);
[[nodiscard]] TokenStore greedy_parse(ByteView input, ParseRange range, ParsePolicy policy = {});
[[nodiscard]] TokenStore greedy_parse(ByteView input, ParsePolicy policy = {});

struct ShortestPathResult {
  TokenStore store;
  double cost = 0.0;  // modelled cost of `store`
};

/// Minimum-cost parse under `model`. Each length uses the smallest distance
/// that reaches it. The cache, when given, must use the smallest-distance
/// policy.
[[nodiscard]] ShortestPathResult shortest_path_parse(const MatchFinder& finder, ParseRange range,
                                                     const SymbolCostModel& model,
                                                     LongestMatchCache* cache = nullptr);
[[nodiscard]] ShortestPathResult shortest_path_parse(ByteView input, ParseRange range,
                                                     const SymbolCostModel& model);

/// Modelled cost of a store (sum of token costs in order).
[[nodiscard]] double modelled_cost(const TokenStore& store, const SymbolCostModel& model);

struct OptimalOptions {
  int max_iterations = 100;
  /// Stop after this many rounds without a smaller encoding.
  int patience = 5;
  ParsePolicy seed_policy{};
  /// Randomises the statistics after a stalled round (off by default).
  bool perturb = false;
  uint64_t seed = 0;
};

struct OptimalResult {
  TokenStore store;
  uint64_t bits = 0;          // dynamic-block size of `store`
  uint64_t greedy_bits = 0;   // dynamic-block size of the greedy seed
  int iterations_run = 0;
  std::vector<uint64_t> cost_history;  // per-round dynamic-block size
  std::vector<uint64_t> best_history;  // best size after each round
};

/// Iterated shortest-path parse: round 0 takes its costs from the greedy
/// parse, every later round from the previous round's parse. Keeps the parse
/// with the smallest single-block dynamic encoding (the greedy seed
/// included).
[[nodiscard]] OptimalResult iterate_optimal(const MatchFinder& finder, ParseRange range,
                                            const OptimalOptions& options = {},
                                            LongestMatchCache* cache = nullptr);
[[nodiscard]] OptimalResult iterate_optimal(ByteView input, ParseRange range, const OptimalOptions& options = {});

}  // namespace braid
