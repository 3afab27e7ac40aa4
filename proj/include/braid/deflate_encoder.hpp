#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "braid/bit_writer.hpp"
#include "braid/lz_store.hpp"
#include "braid/symbol_stats.hpp"

namespace braid {

enum class BlockType { kStored = 0, kFixed = 1, kDynamic = 2 };

/// Exact size in bits of each way to encode one token range as a block
/// (header, tables, payload and end-of-block included).
struct BlockCosts {
  uint64_t stored = 0;
  uint64_t fixed = 0;
  uint64_t dynamic = 0;

  /// Cheapest type; ties prefer fixed, then dynamic, then stored.
  [[nodiscard]] BlockType best() const;
  [[nodiscard]] uint64_t min() const;
};

/// Code lengths a dynamic block sends for the given statistics: length
/// limited to 15 bits, with a dummy code added so that every tree has at
/// least two codes and is complete.
struct DynamicTrees {
  std::vector<uint8_t> litlen;  // 286 entries
  std::vector<uint8_t> dist;    // 30 entries
};
[[nodiscard]] DynamicTrees dynamic_trees(const SymbolStats& stats);

/// Bits for the dynamic-block header: BFINAL/BTYPE, counts, code-length
/// code and run-length coded tree lengths.
[[nodiscard]] uint64_t dynamic_header_bits(const DynamicTrees& trees);

/// Bits a stored encoding of `byte_count` bytes takes when the block starts
/// `bit_offset` (0..7) bits into a byte. Runs over 65535 bytes become
/// several stored blocks.
[[nodiscard]] uint64_t stored_block_bits(size_t byte_count, int bit_offset);
[[nodiscard]] uint64_t fixed_block_bits(const SymbolStats& stats);
[[nodiscard]] uint64_t dynamic_block_bits(const SymbolStats& stats);
[[nodiscard]] uint64_t dynamic_block_bits(const TokenStore& store, size_t from, size_t to);

[[nodiscard]] BlockCosts block_bit_costs(const TokenStore& store, size_t from, size_t to, int bit_offset);

struct EmittedBlock {
  BlockType type;
  uint64_t bits;
  BlockCosts costs;
};

/// Writes tokens [from, to) of `store` as one block using the cheapest
/// encoding. `input` is the whole original input (stored blocks copy from
/// it). Returns the type chosen and the exact number of bits written.
EmittedBlock emit_block(const TokenStore& store, ByteView input, size_t from, size_t to, bool is_final,
                        BitWriter& writer);

/// Writes one block of the given type regardless of cost.
uint64_t emit_block_as(BlockType type, const TokenStore& store, ByteView input, size_t from, size_t to,
                       bool is_final, BitWriter& writer);

}  // namespace braid
