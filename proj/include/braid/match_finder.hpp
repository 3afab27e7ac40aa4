#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "braid/deflate_tables.hpp"
#include "braid/lz_store.hpp"

namespace braid {

struct MatchLimits {
  static constexpr int kMinMatch = deflate::kMinMatch;
  static constexpr int kMaxMatch = deflate::kMaxMatch;
  static constexpr int kWindow = deflate::kWindowSize;
};

/// Which distance wins among candidates of equal (maximal) length.
enum class TieBreak { kLargestDistance, kSmallestDistance };

/// How a found match is scored before the greedy parser accepts it.
enum class ScorePolicy { kIdentity, kDistancePenalty };

/// Identity by default; the distance-penalty policy shortens matches that
/// reach further back than 1024 bytes by one.
[[nodiscard]] constexpr int length_score(int length, int dist, ScorePolicy policy = ScorePolicy::kIdentity) {
  if (policy == ScorePolicy::kDistancePenalty && dist > 1024) return length - 1;
  return length;
}

/// sublen[l] is the smallest distance at which a match of at least length
/// l exists, for l in [3, match length]. Other entries are unspecified.
using Sublen = std::array<uint16_t, MatchLimits::kMaxMatch + 1>;

struct Match {
  int length = 0;
  int dist = 0;
  friend bool operator==(const Match&, const Match&) = default;
};

/// Per-position memo of longest-match searches over one input range.
/// An entry is written once and answers only queries with the same limit;
/// sublen tables are stored as run-length breakpoints.
class LongestMatchCache {
 public:
  LongestMatchCache(size_t start, size_t end, TieBreak policy);

  [[nodiscard]] bool covers(size_t pos) const { return pos >= start_ && pos < end_; }
  [[nodiscard]] TieBreak policy() const { return policy_; }

  /// Fills `match` (and `sublen`, when non-null) from the entry for `pos`.
  /// Returns false on a miss or when the entry was stored with another limit.
  bool lookup(size_t pos, int limit, Match& match, Sublen* sublen);
  /// Records a search result. Ignored when an entry for `pos` already exists.
  void store(size_t pos, int limit, const Match& match, const Sublen& sublen);

  [[nodiscard]] size_t hits() const { return hits_; }
  [[nodiscard]] size_t misses() const { return misses_; }

 private:
  struct Entry {
    uint32_t first = 0;  // index into breaks_
    uint16_t count = 0;
    uint16_t limit = 0;  // 0: empty
    uint16_t length = 0;
    uint16_t dist = 0;
  };
  struct Breakpoint {
    uint16_t max_length;
    uint16_t dist;
  };

  size_t start_;
  size_t end_;
  TieBreak policy_;
  std::vector<Entry> entries_;
  std::vector<Breakpoint> breaks_;
  size_t hits_ = 0;
  size_t misses_ = 0;
};

/// Hash-chain index over a whole input for longest-match queries inside a
/// 32 KB sliding window.
///
/// Every position links to the previous position with the same 3-byte hash
/// (if that is at most one window back), so a query can start at any
/// indexed position. A second chain keyed on (hash, run length of the
/// leading byte) lets runs of one byte skip candidates that provably cannot
/// produce a longer match. Once built the index is read-only and may be
/// queried from several threads.
class MatchFinder {
 public:
  static constexpr int kHashBits = 16;
  static constexpr int kMaxChainHits = 8192;

  /// Builds the index over all of `input` unless `index_all` is false, in
  /// which case positions are added with update_hash().
  explicit MatchFinder(ByteView input, bool index_all = true);

  /// Inserts `pos`; positions must be inserted in increasing order starting
  /// at 0. Positions with fewer than three bytes left hash the bytes present.
  void update_hash(size_t pos);
  [[nodiscard]] size_t indexed_end() const { return indexed_end_; }

  [[nodiscard]] uint32_t hash_at(size_t pos) const;
  /// Newest indexed position with hash `h`, or -1.
  [[nodiscard]] int64_t head(uint32_t h) const { return head_[h]; }
  /// Previous position with the same hash as `pos`, or -1.
  [[nodiscard]] int64_t prev(size_t pos) const { return prev_[pos]; }
  /// Length of the run of identical bytes starting at `pos` (capped at 65535).
  [[nodiscard]] uint32_t run_length(size_t pos) const { return same_[pos]; }

  /// Longest match for input[pos..] against earlier positions within the
  /// window, limited to `limit` bytes (and to the bytes left). Returns
  /// {0, 0} when nothing of length >= 3 exists. Chain walks stop after
  /// kMaxChainHits links. When `sublen` is non-null it receives the smallest
  /// distance for every length up to the result. With a cache, hits are
  /// answered from it and misses are recorded into it.
  [[nodiscard]] Match find_longest_match(size_t pos, int limit, TieBreak tie, Sublen* sublen = nullptr,
                                         LongestMatchCache* cache = nullptr) const;

  [[nodiscard]] ByteView input() const { return input_; }

 private:
  Match search(size_t pos, int limit, TieBreak tie, Sublen& sublen) const;

  ByteView input_;
  size_t indexed_end_ = 0;
  std::vector<int32_t> head_;
  std::vector<int32_t> head2_;
  std::vector<int32_t> prev_;
  std::vector<int32_t> prev2_;
  std::vector<uint16_t> hash2_;
  std::vector<uint16_t> same_;
};

}  // namespace braid
