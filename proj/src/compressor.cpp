#include "braid/compressor.hpp"

#include <algorithm>
#include <stdexcept>

#include "braid/block_splitter.hpp"
#include "braid/parsers.hpp"

namespace braid {

namespace {

struct Candidate {
  TokenStore store;
  BlockPlan plan;
};

struct Chunk {
  size_t begin;
  size_t end;
  size_t block_budget;
};

std::vector<Chunk> plan_chunks(size_t n, const CompressConfig& config) {
  const auto max_blocks = static_cast<size_t>(config.max_blocks);
  const size_t chunk = std::max(config.chunk_size, (n + max_blocks - 1) / max_blocks);
  std::vector<Chunk> chunks;
  for (size_t b = 0; b < n || chunks.empty(); b += chunk) chunks.push_back({b, std::min(n, b + chunk), 1});
  size_t spare = max_blocks - chunks.size();
  const size_t to_share = spare;
  for (Chunk& c : chunks) {
    const size_t extra = n == 0 ? 0 : to_share * (c.end - c.begin) / n;
    c.block_budget += std::min(extra, spare);
    spare -= std::min(extra, spare);
  }
  return chunks;
}

/// Token-index split points for a store whose blocks start at the given
/// input offsets.
BlockPlan plan_from_offsets(const TokenStore& store, const std::vector<size_t>& offsets) {
  BlockPlan plan;
  size_t t = 0;
  for (size_t off : offsets) {
    while (t < store.size() && store.position_of(t) < off) ++t;
    if (t > 0 && t < store.size() && (plan.split_points.empty() || plan.split_points.back() < t)) {
      plan.split_points.push_back(t);
    }
  }
  return plan;
}

uint64_t emit_candidate(const Candidate& c, ByteView view, size_t base, bool last_chunk, BitWriter& w,
                        std::vector<BlockInfo>* blocks) {
  const auto ranges = c.plan.ranges(c.store.size());
  uint64_t bits = 0;
  for (size_t b = 0; b < ranges.size(); ++b) {
    const auto [from, to] = ranges[b];
    const EmittedBlock e = emit_block(c.store, view, from, to, last_chunk && b + 1 == ranges.size(), w);
    bits += e.bits;
    if (blocks != nullptr) {
      blocks->push_back(BlockInfo{base + c.store.position_of(from), base + c.store.position_of(to), e.type, e.bits});
    }
  }
  return bits;
}

uint64_t candidate_bits(const Candidate& c, ByteView view, int bit_offset) {
  BitWriter scratch;
  scratch.write_bits(0, bit_offset);
  return emit_candidate(c, view, 0, false, scratch, nullptr);
}

}  // namespace

std::string_view mode_name(CompressMode m) { return m == CompressMode::kGreedy ? "greedy" : "optimal"; }

std::optional<CompressMode> parse_mode(std::string_view name) {
  if (name == "greedy") return CompressMode::kGreedy;
  if (name == "optimal") return CompressMode::kOptimal;
  return std::nullopt;
}

std::string_view tie_break_name(TieBreak t) {
  return t == TieBreak::kLargestDistance ? "largest-distance" : "smallest-distance";
}

std::optional<TieBreak> parse_tie_break(std::string_view name) {
  if (name == "largest-distance") return TieBreak::kLargestDistance;
  if (name == "smallest-distance") return TieBreak::kSmallestDistance;
  return std::nullopt;
}

std::string_view score_policy_name(ScorePolicy s) {
  return s == ScorePolicy::kIdentity ? "identity" : "distance-penalty";
}

std::optional<ScorePolicy> parse_score_policy(std::string_view name) {
  if (name == "identity") return ScorePolicy::kIdentity;
  if (name == "distance-penalty") return ScorePolicy::kDistancePenalty;
  return std::nullopt;
}

void CompressConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  if (max_blocks < 1 || max_blocks > 100) throw std::invalid_argument("max_blocks must be in [1, 100]");
  if (patience < 1) throw std::invalid_argument("patience must be at least 1");
  if (chunk_size < 1) throw std::invalid_argument("chunk_size must be positive");
}

CompressResult compress(ByteView input, const CompressConfig& config) {
  config.validate();
  CompressResult result;
  BitWriter writer;
  const ParsePolicy policy{config.tie_break, config.score};
  OptimalOptions opts;
  opts.max_iterations = config.iterations;
  opts.patience = config.patience;
  opts.seed_policy = policy;

  const std::vector<Chunk> chunks = plan_chunks(input.size(), config);
  for (size_t ci = 0; ci < chunks.size(); ++ci) {
    const Chunk& chunk = chunks[ci];
    const bool last_chunk = ci + 1 == chunks.size();
    const size_t base = chunk.begin > static_cast<size_t>(MatchLimits::kWindow) ? chunk.begin - MatchLimits::kWindow : 0;
    const ByteView view = input.subspan(base, chunk.end - base);
    const ParseRange range{chunk.begin - base, chunk.end - base};
    const MatchFinder finder(view);

    Candidate greedy;
    greedy.store = greedy_parse(finder, range, policy);
    greedy.plan = split_blocks(greedy.store, chunk.block_budget);

    Candidate chosen;
    if (config.mode == CompressMode::kGreedy) {
      chosen = std::move(greedy);
    } else {
      LongestMatchCache cache(range.instart, range.inend, TieBreak::kSmallestDistance);
      Candidate optimal{TokenStore(range.instart), {}};
      if (config.reparse_blocks) {
        std::vector<size_t> offsets;
        for (const auto& [from, to] : greedy.plan.ranges(greedy.store.size())) {
          const ParseRange block{greedy.store.position_of(from), greedy.store.position_of(to)};
          const OptimalResult r = iterate_optimal(finder, block, opts, &cache);
          result.iterations_run += r.iterations_run;
          if (block.instart != range.instart) offsets.push_back(block.instart);
          optimal.store.append_store(r.store);
        }
        optimal.plan = plan_from_offsets(optimal.store, offsets);
      } else {
        OptimalResult r = iterate_optimal(finder, range, opts, &cache);
        result.iterations_run += r.iterations_run;
        optimal.store = std::move(r.store);
        optimal.plan = split_blocks(optimal.store, chunk.block_budget);
      }
      // The greedy encoding is kept when it is smaller, so optimal mode
      // never loses to greedy mode on the same chunk.
      const int offset = writer.bit_offset();
      const bool use_optimal = candidate_bits(optimal, view, offset) <= candidate_bits(greedy, view, offset);
      chosen = use_optimal ? std::move(optimal) : std::move(greedy);
    }
    check_store(view, chosen.store);
    emit_candidate(chosen, view, base, last_chunk, writer, &result.blocks);
  }

  const Bytes payload = writer.take();
  result.deflate_bytes = payload.size();
  result.output = wrap_container(payload, config.format, input);
  return result;
}

}  // namespace braid
