#include "braid/block_splitter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "braid/deflate_encoder.hpp"
#include "braid/deflate_tables.hpp"
#include "braid/symbol_stats.hpp"

namespace braid {

namespace {

constexpr size_t kSamples = 9;
constexpr size_t kMinBlockTokens = 10;

template <typename Counts>
double entropy_bits(const Counts& counts) {
  size_t total = 0;
  for (size_t c : counts) total += c;
  if (total == 0) return 0.0;
  const double log_total = std::log2(static_cast<double>(total));
  double bits = 0.0;
  for (size_t c : counts) {
    if (c != 0) bits += static_cast<double>(c) * (log_total - std::log2(static_cast<double>(c)));
  }
  return bits;
}

struct Candidate {
  size_t split = 0;
  double gain = 0.0;
  bool evaluated = false;
};

/// Best interior split of [from, to) with its cost, by narrowing a sampled
/// search window.
std::pair<size_t, double> best_split(const TokenStore& store, size_t from, size_t to) {
  size_t lo = from + 1;
  size_t hi = to;  // exclusive
  size_t best = lo;
  double best_cost = std::numeric_limits<double>::infinity();
  auto cost_at = [&](size_t s) { return estimate_block_cost(store, from, s) + estimate_block_cost(store, s, to); };
  while (hi - lo > kSamples) {
    size_t picked = 0;
    double picked_cost = std::numeric_limits<double>::infinity();
    std::array<size_t, kSamples> points{};
    for (size_t k = 0; k < kSamples; ++k) {
      points[k] = lo + (hi - lo) * (k + 1) / (kSamples + 1);
      const double c = cost_at(points[k]);
      if (c < picked_cost) {
        picked_cost = c;
        picked = k;
      }
    }
    if (picked_cost < best_cost) {
      best_cost = picked_cost;
      best = points[picked];
    }
    const size_t new_lo = picked == 0 ? lo : points[picked - 1];
    const size_t new_hi = picked == kSamples - 1 ? hi : points[picked + 1];
    if (new_lo == lo && new_hi == hi) break;
    lo = new_lo;
    hi = new_hi;
  }
  for (size_t s = lo; s < hi; ++s) {
    const double c = cost_at(s);
    if (c < best_cost) {
      best_cost = c;
      best = s;
    }
  }
  return {best, best_cost};
}

}  // namespace

std::vector<std::pair<size_t, size_t>> BlockPlan::ranges(size_t token_count) const {
  std::vector<std::pair<size_t, size_t>> out;
  size_t from = 0;
  for (size_t s : split_points) {
    out.emplace_back(from, s);
    from = s;
  }
  out.emplace_back(from, token_count);
  return out;
}

double estimate_block_cost(const TokenStore& store, size_t from, size_t to) {
  if (from > to || to > store.size()) throw std::out_of_range("estimate_block_cost: bad token range");
  const SymbolStats stats = compute_stats(store, from, to);
  double bits = entropy_bits(stats.litlen) + entropy_bits(stats.dist);
  for (size_t s = 257; s < 286; ++s) bits += static_cast<double>(stats.litlen[s] * deflate::kLengthExtra[s - 257]);
  for (size_t s = 0; s < 30; ++s) bits += static_cast<double>(stats.dist[s] * deflate::kDistExtra[s]);
  return bits + static_cast<double>(dynamic_header_bits(dynamic_trees(stats)));
}

double plan_cost(const TokenStore& store, const BlockPlan& plan) {
  double total = 0.0;
  for (const auto& [from, to] : plan.ranges(store.size())) total += estimate_block_cost(store, from, to);
  return total;
}

BlockPlan split_blocks(const TokenStore& store, size_t max_blocks) {
  if (max_blocks < 1) throw std::invalid_argument("max_blocks must be at least 1");
  BlockPlan plan;
  const size_t n = store.size();
  if (n < 2) return plan;

  // Blocks in token order, each with its cached best split.
  struct Block {
    size_t from;
    size_t to;
    Candidate cand;
  };
  std::vector<Block> blocks{{0, n, {}}};
  while (blocks.size() < max_blocks) {
    size_t pick = blocks.size();
    double pick_gain = 0.0;
    for (size_t b = 0; b < blocks.size(); ++b) {
      Block& blk = blocks[b];
      if (!blk.cand.evaluated) {
        blk.cand.evaluated = true;
        if (blk.to - blk.from >= kMinBlockTokens) {
          const auto [split, cost] = best_split(store, blk.from, blk.to);
          blk.cand.split = split;
          blk.cand.gain = estimate_block_cost(store, blk.from, blk.to) - cost;
        }
      }
      if (blk.cand.gain > pick_gain) {
        pick_gain = blk.cand.gain;
        pick = b;
      }
    }
    if (pick == blocks.size()) break;
    const Block old = blocks[pick];
    blocks[pick] = Block{old.from, old.cand.split, {}};
    blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(pick) + 1, Block{old.cand.split, old.to, {}});
  }
  for (size_t b = 1; b < blocks.size(); ++b) plan.split_points.push_back(blocks[b].from);
  return plan;
}

}  // namespace braid
