#include "braid/parsers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "braid/deflate_encoder.hpp"

namespace braid {

namespace {

using deflate::kMaxMatch;
using deflate::kMinMatch;

int limit_at(size_t pos, size_t inend) { return static_cast<int>(std::min<size_t>(kMaxMatch, inend - pos)); }

void check_range(const MatchFinder& finder, ParseRange range) {
  if (range.instart > range.inend || range.inend > finder.input().size()) {
    throw std::out_of_range("parse range outside input");
  }
  if (range.inend > finder.indexed_end()) throw std::logic_error("parse range not indexed");
}

}  // namespace

SymbolCostModel SymbolCostModel::from_stats(const SymbolStats& stats) {
  SymbolCostModel m;
  auto fill = [](const auto& counts, auto& costs) {
    size_t total = 0;
    for (size_t c : counts) total += c;
    const double log_total = std::log2(static_cast<double>(std::max<size_t>(total, 1)));
    for (size_t s = 0; s < counts.size(); ++s) {
      const double c = counts[s] == 0 ? 0.5 : static_cast<double>(counts[s]);
      costs[s] = log_total - std::log2(c);
    }
  };
  fill(stats.litlen, m.litlen_);
  fill(stats.dist, m.dist_);
  return m;
}

SymbolCostModel SymbolCostModel::fixed_huffman() {
  SymbolCostModel m;
  for (size_t s = 0; s < m.litlen_.size(); ++s) m.litlen_[s] = s < 144 ? 8 : s < 256 ? 9 : s < 280 ? 7 : 8;
  m.dist_.fill(5);
  return m;
}

SymbolCostModel SymbolCostModel::uniform() {
  SymbolCostModel m;
  m.litlen_.fill(1);
  m.dist_.fill(0);
  m.extra_bits_ = false;
  return m;
}

SymbolCostModel SymbolCostModel::quantized(int frac_bits) const {
  SymbolCostModel m = *this;
  const double scale = std::ldexp(1.0, frac_bits);
  for (double& c : m.litlen_) c = std::round(c * scale) / scale;
  for (double& c : m.dist_) c = std::round(c * scale) / scale;
  return m;
}

double SymbolCostModel::match_cost(int length, int dist) const {
  const int ls = deflate::length_symbol(length);
  const int ds = deflate::distance_symbol(dist);
  double c = litlen_[static_cast<size_t>(ls)] + dist_[static_cast<size_t>(ds)];
  if (extra_bits_) c += deflate::length_extra_bits(length) + deflate::distance_extra_bits(dist);
  return c;
}

double SymbolCostModel::min_match_cost() const {
  double best_len = std::numeric_limits<double>::infinity();
  for (int l = kMinMatch; l <= kMaxMatch; ++l) {
    const auto s = static_cast<size_t>(deflate::length_symbol(l));
    best_len = std::min(best_len, litlen_[s] + (extra_bits_ ? deflate::length_extra_bits(l) : 0));
  }
  double best_dist = std::numeric_limits<double>::infinity();
  for (size_t s = 0; s < 30; ++s) best_dist = std::min(best_dist, dist_[s] + (extra_bits_ ? deflate::kDistExtra[s] : 0));
  // Slightly low so pruning against it never drops an improving step.
  return best_len + best_dist - 1e-9;
}

bool verify_len_dist(ByteView input, size_t pos, int length, int dist) {
  if (length < 0 || dist <= 0) return false;
  if (static_cast<size_t>(dist) > pos || pos + static_cast<size_t>(length) > input.size()) return false;
  // Comparing input against input reproduces overlap-copy semantics: the
  // byte copied from pos - dist + i is itself already verified.
  for (int i = 0; i < length; ++i) {
    if (input[pos + static_cast<size_t>(i)] != input[pos - static_cast<size_t>(dist) + static_cast<size_t>(i)]) return false;
  }
  return true;
}

void check_store(ByteView input, const TokenStore& store) {
  for (size_t i = 0; i < store.size(); ++i) {
    const Token t = store[i];
    const size_t pos = store.position_of(i);
    if (t.is_literal()) {
      if (pos >= input.size() || input[pos] != t.litlen) {
        throw ParseError("literal mismatch at offset " + std::to_string(pos));
      }
    } else if (!verify_len_dist(input, pos, t.litlen, t.dist)) {
      throw ParseError("invalid match (" + std::to_string(t.litlen) + ", " + std::to_string(t.dist) +
                       ") at offset " + std::to_string(pos));
    }
  }
}

TokenStore greedy_parse(const MatchFinder& finder, ParseRange range, ParsePolicy policy, LongestMatchCache* cache) {
  check_range(finder, range);
  const ByteView input = finder.input();
  TokenStore store(range.instart);
  size_t pos = range.instart;
  while (pos < range.inend) {
    const Match m = finder.find_longest_match(pos, limit_at(pos, range.inend), policy.tie, nullptr, cache);
    const int score = length_score(m.length, m.dist, policy.score);
    if (score >= kMinMatch) {
      if (!verify_len_dist(input, pos, score, m.dist)) throw ParseError("greedy parse produced an invalid match");
      store.append_match(score, m.dist);
      pos += static_cast<size_t>(score);
    } else {
      store.append_literal(input[pos]);
      ++pos;
    }
  }
  return store;
}

TokenStore greedy_parse(ByteView input, ParseRange range, ParsePolicy policy) {
  const MatchFinder finder(input.first(range.inend));
  return greedy_parse(finder, range, policy);
}

TokenStore greedy_parse(ByteView input, ParsePolicy policy) { return greedy_parse(input, {0, input.size()}, policy); }

ShortestPathResult shortest_path_parse(const MatchFinder& finder, ParseRange range, const SymbolCostModel& model,
                                       LongestMatchCache* cache) {
  check_range(finder, range);
  if (cache != nullptr && cache->policy() != TieBreak::kSmallestDistance) {
    throw std::invalid_argument("shortest_path_parse needs a smallest-distance cache");
  }
  const ByteView input = finder.input();
  const size_t n = range.inend - range.instart;
  ShortestPathResult result{TokenStore(range.instart), 0.0};
  if (n == 0) return result;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> costs(n + 1, kInf);
  std::vector<uint16_t> lengths(n + 1, 0);
  costs[0] = 0.0;
  Sublen sublen{};
  const double min_match = model.min_match_cost();

  for (size_t i = 0; i < n; ++i) {
    const size_t pos = range.instart + i;
    // Inside long runs of one byte, (258, 1) steps are taken directly.
    if (finder.run_length(pos) > 2 * kMaxMatch && i > kMaxMatch + 1 &&
        finder.run_length(pos - kMaxMatch) > kMaxMatch && pos + 2 * kMaxMatch < range.inend) {
      const double step = model.match_cost(kMaxMatch, 1);
      for (int k = 0; k < kMaxMatch; ++k, ++i) {
        costs[i + kMaxMatch] = costs[i] + step;
        lengths[i + kMaxMatch] = kMaxMatch;
      }
      --i;
      continue;
    }
    const Match m = finder.find_longest_match(pos, limit_at(pos, range.inend), TieBreak::kSmallestDistance,
                                              &sublen, cache);
    const double lit = costs[i] + model.literal_cost(input[pos]);
    if (lit < costs[i + 1]) {
      costs[i + 1] = lit;
      lengths[i + 1] = 1;
    }
    if (m.length < kMinMatch) continue;
    const double base = costs[i];
    for (int l = kMinMatch; l <= m.length; ++l) {
      const size_t j = i + static_cast<size_t>(l);
      if (base + min_match >= costs[j]) continue;
      const double c = base + model.match_cost(l, sublen[static_cast<size_t>(l)]);
      if (c < costs[j]) {
        costs[j] = c;
        lengths[j] = static_cast<uint16_t>(l);
      }
    }
  }

  std::vector<uint16_t> path;
  for (size_t j = n; j > 0;) {
    const uint16_t l = lengths[j];
    if (l == 0 || l > j) throw ParseError("shortest path is broken");
    path.push_back(l);
    j -= l;
  }
  std::reverse(path.begin(), path.end());

  size_t pos = range.instart;
  for (const uint16_t l : path) {
    if (l == 1) {
      result.store.append_literal(input[pos]);
    } else {
      const Match m = finder.find_longest_match(pos, limit_at(pos, range.inend), TieBreak::kSmallestDistance,
                                                &sublen, cache);
      const int dist = l <= m.length ? sublen[l] : 0;
      if (!verify_len_dist(input, pos, l, dist)) throw ParseError("shortest path chose an invalid match");
      result.store.append_match(l, dist);
    }
    pos += l;
  }
  result.cost = costs[n];
  return result;
}

ShortestPathResult shortest_path_parse(ByteView input, ParseRange range, const SymbolCostModel& model) {
  const MatchFinder finder(input.first(range.inend));
  return shortest_path_parse(finder, range, model);
}

double modelled_cost(const TokenStore& store, const SymbolCostModel& model) {
  double c = 0.0;
  for (const Token& t : store.tokens()) c += model.cost(t.litlen, t.dist);
  return c;
}

namespace {

void perturb_stats(SymbolStats& stats, std::mt19937_64& rng) {
  auto shuffle = [&rng](auto& counts) {
    std::uniform_int_distribution<size_t> pick(0, counts.size() - 1);
    for (size_t i = 0; i < counts.size(); ++i) {
      if ((rng() >> 4) % 3 == 0) counts[i] = counts[pick(rng)];
    }
  };
  shuffle(stats.litlen);
  shuffle(stats.dist);
  stats.litlen[deflate::kEndOfBlock] = 1;
}

}  // namespace

OptimalResult iterate_optimal(const MatchFinder& finder, ParseRange range, const OptimalOptions& options,
                              LongestMatchCache* cache) {
  if (options.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  OptimalResult result;
  result.store = greedy_parse(finder, range, options.seed_policy);
  result.greedy_bits = dynamic_block_bits(result.store, 0, result.store.size());
  result.bits = result.greedy_bits;

  SymbolStats stats = compute_stats(result.store);
  std::mt19937_64 rng(options.seed);
  int stale = 0;
  for (int it = 0; it < options.max_iterations; ++it) {
    ShortestPathResult sp = shortest_path_parse(finder, range, SymbolCostModel::from_stats(stats), cache);
    const uint64_t bits = dynamic_block_bits(sp.store, 0, sp.store.size());
    ++result.iterations_run;
    result.cost_history.push_back(bits);
    stats = compute_stats(sp.store);
    if (bits < result.bits) {
      result.bits = bits;
      result.store = std::move(sp.store);
      stale = 0;
    } else {
      ++stale;
      if (options.perturb) perturb_stats(stats, rng);
    }
    result.best_history.push_back(result.bits);
    if (stale >= options.patience) break;
  }
  return result;
}

OptimalResult iterate_optimal(ByteView input, ParseRange range, const OptimalOptions& options) {
  const MatchFinder finder(input.first(range.inend));
  LongestMatchCache cache(range.instart, range.inend, TieBreak::kSmallestDistance);
  return iterate_optimal(finder, range, options, &cache);
}

}  // namespace braid
