#include "braid/deflate_encoder.hpp"

#include <algorithm>
#include <array>

#include "braid/deflate_tables.hpp"
#include "braid/huffman.hpp"

namespace braid {

namespace {

using deflate::kEndOfBlock;

constexpr std::array<uint8_t, 19> kCodeLengthOrder = {16, 17, 18, 0, 8, 7, 9, 6, 10, 5, 11, 4, 12, 3, 13, 2, 14, 1, 15};
constexpr size_t kMaxStoredLen = 65535;

struct RleSymbol {
  uint8_t symbol;
  uint8_t extra;
};

std::array<uint8_t, 288> fixed_litlen_lengths() {
  std::array<uint8_t, 288> l{};
  for (size_t i = 0; i < 288; ++i) l[i] = i < 144 ? 8 : i < 256 ? 9 : i < 280 ? 7 : 8;
  return l;
}

const std::array<uint8_t, 288> kFixedLitLen = fixed_litlen_lengths();
const std::array<uint8_t, 32> kFixedDist = [] {
  std::array<uint8_t, 32> l{};
  l.fill(5);
  return l;
}();

/// Gives a tree with fewer than two used codes dummy length-1 codes so it is
/// complete.
void ensure_two_codes(std::vector<uint8_t>& lengths) {
  size_t used = 0;
  for (uint8_t l : lengths) used += l != 0;
  if (used >= 2) return;
  for (size_t s = 0; s < lengths.size() && used < 2; ++s) {
    if (lengths[s] == 0) {
      lengths[s] = 1;
      ++used;
    }
  }
  // A single pre-existing code keeps length 1 as well.
  for (uint8_t& l : lengths) {
    if (l != 0) l = 1;
  }
}

std::vector<RleSymbol> run_length_code(const std::vector<uint8_t>& lengths) {
  std::vector<RleSymbol> out;
  size_t i = 0;
  while (i < lengths.size()) {
    const uint8_t v = lengths[i];
    size_t run = 1;
    while (i + run < lengths.size() && lengths[i + run] == v) ++run;
    i += run;
    if (v == 0) {
      while (run >= 11) {
        const size_t r = std::min<size_t>(run, 138);
        out.push_back({18, static_cast<uint8_t>(r - 11)});
        run -= r;
      }
      if (run >= 3) {
        out.push_back({17, static_cast<uint8_t>(run - 3)});
        run = 0;
      }
    } else {
      out.push_back({v, 0});
      --run;
      while (run >= 3) {
        const size_t r = std::min<size_t>(run, 6);
        out.push_back({16, static_cast<uint8_t>(r - 3)});
        run -= r;
      }
    }
    for (; run > 0; --run) out.push_back({v, 0});
  }
  return out;
}

int rle_extra_bits(uint8_t symbol) { return symbol == 16 ? 2 : symbol == 17 ? 3 : symbol == 18 ? 7 : 0; }

/// Everything needed to write the table section of a dynamic block.
struct DynamicHeader {
  DynamicTrees trees;
  size_t hlit = 257;
  size_t hdist = 1;
  size_t hclen = 4;
  std::vector<RleSymbol> rle;
  std::vector<uint8_t> clen_lengths;  // 19 entries, symbol order
  uint64_t bits = 0;
};

DynamicHeader plan_header(const DynamicTrees& trees) {
  DynamicHeader h;
  h.trees = trees;
  h.hlit = 257;
  for (size_t s = 257; s < trees.litlen.size(); ++s) {
    if (trees.litlen[s] != 0) h.hlit = s + 1;
  }
  h.hdist = 1;
  for (size_t s = 0; s < trees.dist.size(); ++s) {
    if (trees.dist[s] != 0) h.hdist = s + 1;
  }
  std::vector<uint8_t> all(trees.litlen.begin(), trees.litlen.begin() + static_cast<std::ptrdiff_t>(h.hlit));
  all.insert(all.end(), trees.dist.begin(), trees.dist.begin() + static_cast<std::ptrdiff_t>(h.hdist));
  h.rle = run_length_code(all);

  std::array<size_t, 19> clen_freq{};
  for (const RleSymbol& r : h.rle) ++clen_freq[r.symbol];
  h.clen_lengths = length_limited_code_lengths(clen_freq, 7);
  ensure_two_codes(h.clen_lengths);

  h.hclen = 4;
  for (size_t i = 0; i < kCodeLengthOrder.size(); ++i) {
    if (h.clen_lengths[kCodeLengthOrder[i]] != 0) h.hclen = std::max(h.hclen, i + 1);
  }
  h.bits = 3 + 5 + 5 + 4 + 3 * h.hclen;
  for (const RleSymbol& r : h.rle) h.bits += h.clen_lengths[r.symbol] + static_cast<uint64_t>(rle_extra_bits(r.symbol));
  return h;
}

template <typename LitLen, typename Dist>
uint64_t payload_bits(const SymbolStats& stats, const LitLen& litlen_len, const Dist& dist_len) {
  uint64_t bits = 0;
  for (size_t s = 0; s < 286; ++s) {
    if (stats.litlen[s] == 0) continue;
    uint64_t per = litlen_len[s];
    if (s >= 257) per += deflate::kLengthExtra[s - 257];
    bits += per * stats.litlen[s];
  }
  for (size_t s = 0; s < 30; ++s) {
    if (stats.dist[s] == 0) continue;
    bits += (static_cast<uint64_t>(dist_len[s]) + deflate::kDistExtra[s]) * stats.dist[s];
  }
  return bits;
}

template <typename LitLen, typename Dist>
void write_tokens(const TokenStore& store, size_t from, size_t to, const LitLen& litlen_len,
                  const std::vector<uint16_t>& litlen_codes, const Dist& dist_len,
                  const std::vector<uint16_t>& dist_codes, BitWriter& w) {
  const auto& tokens = store.tokens();
  for (size_t i = from; i < to; ++i) {
    const Token t = tokens[i];
    if (t.is_literal()) {
      w.write_code(litlen_codes[t.litlen], litlen_len[t.litlen]);
      continue;
    }
    const auto ls = static_cast<size_t>(deflate::length_symbol(t.litlen));
    w.write_code(litlen_codes[ls], litlen_len[ls]);
    w.write_bits(static_cast<uint32_t>(deflate::length_extra_value(t.litlen)), deflate::length_extra_bits(t.litlen));
    const auto ds = static_cast<size_t>(deflate::distance_symbol(t.dist));
    w.write_code(dist_codes[ds], dist_len[ds]);
    w.write_bits(static_cast<uint32_t>(deflate::distance_extra_value(t.dist)), deflate::distance_extra_bits(t.dist));
  }
  w.write_code(litlen_codes[kEndOfBlock], litlen_len[kEndOfBlock]);
}

}  // namespace

BlockType BlockCosts::best() const {
  if (fixed <= dynamic && fixed <= stored) return BlockType::kFixed;
  if (dynamic <= stored) return BlockType::kDynamic;
  return BlockType::kStored;
}

uint64_t BlockCosts::min() const { return std::min({stored, fixed, dynamic}); }

DynamicTrees dynamic_trees(const SymbolStats& stats) {
  DynamicTrees t;
  std::array<size_t, 286> litlen{};
  std::copy_n(stats.litlen.begin(), 286, litlen.begin());
  std::array<size_t, 30> dist{};
  std::copy_n(stats.dist.begin(), 30, dist.begin());
  t.litlen = length_limited_code_lengths(litlen, deflate::kMaxCodeBits);
  ensure_two_codes(t.litlen);
  const bool any_dist = std::any_of(dist.begin(), dist.end(), [](size_t c) { return c != 0; });
  t.dist = any_dist ? length_limited_code_lengths(dist, deflate::kMaxCodeBits) : std::vector<uint8_t>(30, 0);
  ensure_two_codes(t.dist);
  return t;
}

uint64_t dynamic_header_bits(const DynamicTrees& trees) { return plan_header(trees).bits; }

uint64_t stored_block_bits(size_t byte_count, int bit_offset) {
  uint64_t bits = 0;
  int offset = bit_offset;
  do {
    const size_t chunk = std::min(byte_count, kMaxStoredLen);
    const int after_header = (offset + 3) % 8;
    bits += 3 + static_cast<uint64_t>((8 - after_header) % 8) + 32 + 8 * static_cast<uint64_t>(chunk);
    byte_count -= chunk;
    offset = 0;
  } while (byte_count > 0);
  return bits;
}

uint64_t fixed_block_bits(const SymbolStats& stats) { return 3 + payload_bits(stats, kFixedLitLen, kFixedDist); }

uint64_t dynamic_block_bits(const SymbolStats& stats) {
  const DynamicTrees trees = dynamic_trees(stats);
  return plan_header(trees).bits + payload_bits(stats, trees.litlen, trees.dist);
}

uint64_t dynamic_block_bits(const TokenStore& store, size_t from, size_t to) {
  return dynamic_block_bits(compute_stats(store, from, to));
}

BlockCosts block_bit_costs(const TokenStore& store, size_t from, size_t to, int bit_offset) {
  const SymbolStats stats = compute_stats(store, from, to);
  BlockCosts c;
  c.stored = stored_block_bits(store.position_of(to) - store.position_of(from), bit_offset);
  c.fixed = fixed_block_bits(stats);
  c.dynamic = dynamic_block_bits(stats);
  return c;
}

uint64_t emit_block_as(BlockType type, const TokenStore& store, ByteView input, size_t from, size_t to,
                       bool is_final, BitWriter& w) {
  const size_t start_bits = w.bit_count();
  const uint32_t final_bit = is_final ? 1u : 0u;
  switch (type) {
    case BlockType::kStored: {
      size_t begin = store.position_of(from);
      const size_t end = store.position_of(to);
      do {
        const size_t chunk = std::min(end - begin, kMaxStoredLen);
        const bool last = begin + chunk == end;
        w.write_bits(last ? final_bit : 0u, 1);
        w.write_bits(0, 2);
        w.align_to_byte();
        const auto len = static_cast<uint16_t>(chunk);
        const auto nlen = static_cast<uint16_t>(~len);
        w.write_byte(static_cast<uint8_t>(len & 0xff));
        w.write_byte(static_cast<uint8_t>(len >> 8));
        w.write_byte(static_cast<uint8_t>(nlen & 0xff));
        w.write_byte(static_cast<uint8_t>(nlen >> 8));
        for (size_t i = 0; i < chunk; ++i) w.write_byte(input[begin + i]);
        begin += chunk;
      } while (begin < end);
      break;
    }
    case BlockType::kFixed: {
      w.write_bits(final_bit, 1);
      w.write_bits(1, 2);
      static const std::vector<uint16_t> litlen_codes = canonical_codes(kFixedLitLen);
      static const std::vector<uint16_t> dist_codes = canonical_codes(kFixedDist);
      write_tokens(store, from, to, kFixedLitLen, litlen_codes, kFixedDist, dist_codes, w);
      break;
    }
    case BlockType::kDynamic: {
      const DynamicHeader h = plan_header(dynamic_trees(compute_stats(store, from, to)));
      w.write_bits(final_bit, 1);
      w.write_bits(2, 2);
      w.write_bits(static_cast<uint32_t>(h.hlit - 257), 5);
      w.write_bits(static_cast<uint32_t>(h.hdist - 1), 5);
      w.write_bits(static_cast<uint32_t>(h.hclen - 4), 4);
      for (size_t i = 0; i < h.hclen; ++i) w.write_bits(h.clen_lengths[kCodeLengthOrder[i]], 3);
      const std::vector<uint16_t> clen_codes = canonical_codes(h.clen_lengths);
      for (const RleSymbol& r : h.rle) {
        w.write_code(clen_codes[r.symbol], h.clen_lengths[r.symbol]);
        w.write_bits(r.extra, rle_extra_bits(r.symbol));
      }
      const std::vector<uint16_t> litlen_codes = canonical_codes(h.trees.litlen);
      const std::vector<uint16_t> dist_codes = canonical_codes(h.trees.dist);
      write_tokens(store, from, to, h.trees.litlen, litlen_codes, h.trees.dist, dist_codes, w);
      break;
    }
  }
  return w.bit_count() - start_bits;
}

EmittedBlock emit_block(const TokenStore& store, ByteView input, size_t from, size_t to, bool is_final,
                        BitWriter& writer) {
  const BlockCosts costs = block_bit_costs(store, from, to, writer.bit_offset());
  const BlockType type = costs.best();
  const uint64_t bits = emit_block_as(type, store, input, from, to, is_final, writer);
  return EmittedBlock{type, bits, costs};
}

}  // namespace braid
