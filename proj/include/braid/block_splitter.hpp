#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "braid/lz_store.hpp"

namespace braid {

/// Token-index split points partitioning a store into blocks.
struct BlockPlan {
  std::vector<size_t> split_points;  // strictly increasing, interior

  [[nodiscard]] size_t block_count() const { return split_points.size() + 1; }
  /// [from, to) token ranges of every block of a store with `token_count`
  /// tokens.
  [[nodiscard]] std::vector<std::pair<size_t, size_t>> ranges(size_t token_count) const;
};

/// Estimated size in bits of tokens [from, to) as one dynamic block:
/// Shannon entropy of its literal/length and distance histograms, the
/// header and tree description its Huffman trees need, and the extra bits.
[[nodiscard]] double estimate_block_cost(const TokenStore& store, size_t from, size_t to);

/// Sum of estimate_block_cost over the plan's blocks.
[[nodiscard]] double plan_cost(const TokenStore& store, const BlockPlan& plan);

/// Greedy recursive bisection: repeatedly applies the split that lowers the
/// estimated cost most, until no split helps or `max_blocks` is reached.
/// Split candidates are sampled at 9 evenly spaced points and refined
/// around the best one.
[[nodiscard]] BlockPlan split_blocks(const TokenStore& store, size_t max_blocks = 100);

}  // namespace braid
