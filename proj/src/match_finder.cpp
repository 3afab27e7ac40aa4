#include "braid/match_finder.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "braid/kernels.hpp"

namespace braid {

namespace {

constexpr uint32_t kHashSize = 1u << MatchFinder::kHashBits;

uint32_t hash3(const uint8_t* p, size_t avail) {
  uint32_t v = 0;
  for (size_t i = 0; i < 3; ++i) v = (v << 8) | (i < avail ? p[i] : 0u);
  return (v * 0x9E3779B1u) >> (32 - MatchFinder::kHashBits);
}

uint32_t hash_with_run(uint32_t h, uint32_t run) {
  return (h ^ ((run - MatchLimits::kMinMatch) & 0xffu)) & (kHashSize - 1);
}

}  // namespace

LongestMatchCache::LongestMatchCache(size_t start, size_t end, TieBreak policy)
    : start_(start), end_(end), policy_(policy), entries_(end > start ? end - start : 0) {}

bool LongestMatchCache::lookup(size_t pos, int limit, Match& match, Sublen* sublen) {
  if (!covers(pos)) return false;
  const Entry& e = entries_[pos - start_];
  if (e.limit == 0 || e.limit != limit) {
    ++misses_;
    return false;
  }
  ++hits_;
  match = Match{e.length, e.dist};
  if (sublen != nullptr) {
    int length = MatchLimits::kMinMatch;
    for (uint32_t i = 0; i < e.count; ++i) {
      const Breakpoint& b = breaks_[e.first + i];
      for (; length <= b.max_length; ++length) (*sublen)[length] = b.dist;
    }
  }
  return true;
}

void LongestMatchCache::store(size_t pos, int limit, const Match& match, const Sublen& sublen) {
  if (!covers(pos) || limit <= 0) return;
  Entry& e = entries_[pos - start_];
  if (e.limit != 0) return;
  e.limit = static_cast<uint16_t>(limit);
  e.length = static_cast<uint16_t>(match.length);
  e.dist = static_cast<uint16_t>(match.dist);
  e.first = static_cast<uint32_t>(breaks_.size());
  for (int l = MatchLimits::kMinMatch; l <= match.length; ++l) {
    if (l == match.length || sublen[l + 1] != sublen[l]) {
      breaks_.push_back(Breakpoint{static_cast<uint16_t>(l), sublen[l]});
      ++e.count;
    }
  }
}

MatchFinder::MatchFinder(ByteView input, bool index_all)
    : input_(input),
      head_(kHashSize, -1),
      head2_(kHashSize, -1),
      prev_(input.size(), -1),
      prev2_(input.size(), -1),
      hash2_(input.size(), 0),
      same_(input.size(), 0) {
  if (input.size() > static_cast<size_t>(std::numeric_limits<int32_t>::max())) {
    throw std::length_error("match finder input exceeds 2 GiB");
  }
  // Runs are counted from the back so each position is O(1).
  for (size_t i = input.size(); i-- > 0;) {
    uint32_t run = 1;
    if (i + 1 < input.size() && input[i + 1] == input[i]) run = std::min<uint32_t>(same_[i + 1] + 1u, 0xffffu);
    same_[i] = static_cast<uint16_t>(run);
  }
  if (index_all) {
    for (size_t i = 0; i < input.size(); ++i) update_hash(i);
  }
}

uint32_t MatchFinder::hash_at(size_t pos) const { return hash3(input_.data() + pos, input_.size() - pos); }

void MatchFinder::update_hash(size_t pos) {
  if (pos != indexed_end_) throw std::logic_error("update_hash: positions must be inserted in order");
  const auto p = static_cast<int32_t>(pos);
  const uint32_t h = hash_at(pos);
  const uint32_t h2 = hash_with_run(h, same_[pos]);
  const int32_t older = head_[h];
  prev_[pos] = (older >= 0 && p - older <= MatchLimits::kWindow) ? older : -1;
  head_[h] = p;
  const int32_t older2 = head2_[h2];
  prev2_[pos] = (older2 >= 0 && p - older2 <= MatchLimits::kWindow) ? older2 : -1;
  head2_[h2] = p;
  hash2_[pos] = static_cast<uint16_t>(h2);
  ++indexed_end_;
}

Match MatchFinder::find_longest_match(size_t pos, int limit, TieBreak tie, Sublen* sublen,
                                      LongestMatchCache* cache) const {
  if (pos >= input_.size()) return {};
  limit = std::min<int>(limit, static_cast<int>(std::min<size_t>(input_.size() - pos, MatchLimits::kMaxMatch)));
  if (limit < MatchLimits::kMinMatch) return {};

  Match m;
  if (cache != nullptr) {
    if (cache->policy() != tie) throw std::invalid_argument("cache was built for another tie-break policy");
    if (cache->lookup(pos, limit, m, sublen)) return m;
  }
  Sublen local;
  Sublen& table = sublen != nullptr ? *sublen : local;
  m = search(pos, limit, tie, table);
  if (cache != nullptr) cache->store(pos, limit, m, table);
  return m;
}

Match MatchFinder::search(size_t pos, int limit, TieBreak tie, Sublen& sublen) const {
  if (pos >= indexed_end_) throw std::logic_error("find_longest_match: position not indexed yet");
  const uint8_t* data = input_.data();
  const uint8_t* scan = data + pos;
  const uint32_t run0 = same_[pos];
  const bool smallest = tie == TieBreak::kSmallestDistance;

  int best_len = 0;
  int best_dist = 0;
  bool on_run_chain = false;
  int32_t p = prev_[pos];
  int hits = 0;

  while (p >= 0 && hits < kMaxChainHits) {
    const size_t dist = pos - static_cast<size_t>(p);
    if (dist > static_cast<size_t>(MatchLimits::kWindow)) break;
    ++hits;
    const uint8_t* cand = data + p;

    // A candidate must agree at the byte that decides whether it can reach
    // (smallest) or tie (largest) the current best length.
    const int probe = smallest ? best_len : std::max(best_len - 1, 0);
    if (cand[0] == scan[0] && cand[probe] == scan[probe]) {
      auto skip = static_cast<size_t>(std::min<uint32_t>({run0, same_[p], static_cast<uint32_t>(limit)}));
      const size_t len = skip + kernels::match_length(scan + skip, cand + skip, static_cast<size_t>(limit) - skip);
      const int l = static_cast<int>(len);
      if (l > best_len) {
        for (int k = std::max(best_len + 1, MatchLimits::kMinMatch); k <= l; ++k) {
          sublen[k] = static_cast<uint16_t>(dist);
        }
        best_len = l;
        best_dist = static_cast<int>(dist);
        if (smallest && best_len >= limit) break;
      } else if (!smallest && l == best_len && l >= MatchLimits::kMinMatch) {
        best_dist = static_cast<int>(dist);
      }
    }

    // Candidates off the run chain have a different run length, so they
    // match at most run0 bytes; once the best length has reached (smallest)
    // or passed (largest) run0 only the run chain can still contribute.
    if (!on_run_chain && hash2_[p] == hash2_[pos] &&
        (smallest ? best_len >= static_cast<int>(run0) : best_len > static_cast<int>(run0))) {
      on_run_chain = true;
    }
    const int32_t next = on_run_chain ? prev2_[p] : prev_[p];
    if (next >= p) break;
    p = next;
  }

  if (best_len < MatchLimits::kMinMatch) return {};
  return Match{best_len, best_dist};
}

}  // namespace braid
