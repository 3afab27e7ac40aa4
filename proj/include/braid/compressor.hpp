#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "braid/container.hpp"
#include "braid/deflate_encoder.hpp"
#include "braid/lz_store.hpp"
#include "braid/match_finder.hpp"

namespace braid {

enum class CompressMode { kGreedy, kOptimal };

[[nodiscard]] std::string_view mode_name(CompressMode m);
[[nodiscard]] std::optional<CompressMode> parse_mode(std::string_view name);
[[nodiscard]] std::string_view tie_break_name(TieBreak t);
[[nodiscard]] std::optional<TieBreak> parse_tie_break(std::string_view name);
[[nodiscard]] std::string_view score_policy_name(ScorePolicy s);
[[nodiscard]] std::optional<ScorePolicy> parse_score_policy(std::string_view name);

struct CompressConfig {
  CompressMode mode = CompressMode::kOptimal;
  ContainerFormat format = ContainerFormat::kGzip;
  int iterations = 100;
  int max_blocks = 100;
  TieBreak tie_break = TieBreak::kLargestDistance;
  ScorePolicy score = ScorePolicy::kIdentity;
  /// Split the greedy parse first, then run the iterated parse per block.
  bool reparse_blocks = false;
  int patience = 5;
  /// Inputs are parsed in chunks of at least this many bytes.
  size_t chunk_size = size_t{1} << 20;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct BlockInfo {
  size_t begin = 0;  // input offsets
  size_t end = 0;
  BlockType type = BlockType::kFixed;
  uint64_t bits = 0;
};

struct CompressResult {
  Bytes output;              // framed stream
  size_t deflate_bytes = 0;  // payload size without framing
  std::vector<BlockInfo> blocks;
  int iterations_run = 0;  // summed over chunks
};

/// Full pipeline: parse, split into at most max_blocks blocks, entropy code
/// and frame. Deterministic for a given input and config.
[[nodiscard]] CompressResult compress(ByteView input, const CompressConfig& config = {});

}  // namespace braid
