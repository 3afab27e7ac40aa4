#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "braid/lz_store.hpp"

namespace braid::baselines {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (offset, length, next symbol). Offset 0 with length 0 is a bare symbol.
struct Lz77Tuple {
  uint16_t offset = 0;
  uint8_t length = 0;
  uint8_t next = 0;
  friend bool operator==(const Lz77Tuple&, const Lz77Tuple&) = default;
};

/// Either a pointer (offset, length) or a literal byte.
struct LzssItem {
  bool pointer = false;
  uint16_t offset = 0;
  uint8_t length = 0;
  uint8_t literal = 0;
  friend bool operator==(const LzssItem&, const LzssItem&) = default;
};

struct Lz77Params {
  size_t search_size = 4096;   // at most 65535
  size_t lookahead_size = 18;  // at most 255
};

struct LzssParams {
  size_t search_size = 4096;
  size_t lookahead_size = 18;
  size_t min_match = 2;  // pointers only for longer matches
};

/// Classic tuple LZ77. A match must lie inside the search buffer (no
/// overlap into the lookahead) and among equally long matches the most
/// recent wins. The step after a match also emits the following symbol;
/// a match that ends the input carries a placeholder symbol 0 that the
/// decoder drops.
[[nodiscard]] std::vector<Lz77Tuple> lz77_encode(ByteView input, Lz77Params params = {});
/// Decodes tuples, stopping at `original_length` bytes.
[[nodiscard]] Bytes lz77_decode(std::span<const Lz77Tuple> tuples, size_t original_length);

/// Flag-bit LZSS; pointers may overlap the bytes they produce.
[[nodiscard]] std::vector<LzssItem> lzss_encode(ByteView input, LzssParams params = {});
[[nodiscard]] Bytes lzss_decode(std::span<const LzssItem> items);

/// Big-endian fixed-width token bytes: 2-byte offset, 1-byte length,
/// 1-byte symbol per tuple.
[[nodiscard]] Bytes serialize_tokens(std::span<const Lz77Tuple> tuples);
[[nodiscard]] std::vector<Lz77Tuple> parse_tokens(ByteView bytes);

/// LZSS items in groups of eight behind one flag byte (bit i set: item i
/// is a pointer). Pointers take 2-byte big-endian offset plus 1-byte
/// length, literals one byte.
[[nodiscard]] Bytes serialize_items(std::span<const LzssItem> items);
[[nodiscard]] std::vector<LzssItem> parse_items(ByteView bytes, size_t count);

inline constexpr uint8_t kFileVersion = 1;

/// .lz77 / .lzss files: 4-byte magic ("LZ77" or "LZSS"), version byte,
/// big-endian u32 original length and u32 item count, then the items.
[[nodiscard]] Bytes lz77_compress(ByteView input, Lz77Params params = {});
[[nodiscard]] Bytes lz77_decompress(ByteView file);
[[nodiscard]] Bytes lzss_compress(ByteView input, LzssParams params = {});
[[nodiscard]] Bytes lzss_decompress(ByteView file);

}  // namespace braid::baselines
