#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "braid/container.hpp"
#include "braid/lz_store.hpp"

namespace braid {

enum class InflateErrc {
  kTruncated,
  kInvalidBlockType,
  kStoredLengthMismatch,
  kOversubscribedTree,
  kIncompleteTree,
  kBadCodeLengths,
  kMissingEndOfBlock,
  kInvalidSymbol,
  kDistanceTooFar,
  kBadMagic,
  kUnsupportedMethod,
  kBadHeaderFlags,
  kHeaderCheck,
  kCrcMismatch,
  kSizeMismatch,
  kAdlerMismatch,
  kTrailingData,
};

[[nodiscard]] std::string_view errc_name(InflateErrc e);

class InflateError : public std::runtime_error {
 public:
  InflateError(InflateErrc code, const std::string& detail);
  [[nodiscard]] InflateErrc code() const { return code_; }

 private:
  InflateErrc code_;
};

/// Per-block record of what a stream contained (for verification).
struct BlockTrace {
  int type = 0;  // BTYPE
  bool final = false;
  std::vector<uint8_t> litlen;  // code lengths, dynamic blocks only
  std::vector<uint8_t> dist;
  std::vector<uint8_t> clen;
  size_t output_bytes = 0;
};

struct InflateResult {
  Bytes output;
  size_t consumed = 0;             // input bytes used, trailer included
  bool checksum_verified = false;  // always false for raw streams
  std::vector<BlockTrace> blocks;  // filled only when tracing
};

struct InflateOptions {
  bool trace_blocks = false;
};

/// Strict RFC 1951 decoder. Rejects oversubscribed and incomplete trees
/// (except a distance tree with at most one code), reserved block types and
/// symbols, and distances before the start of the output.
[[nodiscard]] InflateResult inflate(ByteView deflate_bytes, InflateOptions options = {});
/// RFC 1950 stream; header check bits and Adler-32 verified.
[[nodiscard]] InflateResult zlib_decompress(ByteView data, InflateOptions options = {});
/// Single-member RFC 1952 stream; CRC-32 and ISIZE verified.
[[nodiscard]] InflateResult gunzip(ByteView data, InflateOptions options = {});
/// Decodes `format`; trailing bytes after the stream are an error.
[[nodiscard]] InflateResult decompress(ByteView data, ContainerFormat format, InflateOptions options = {});
/// gzip or zlib chosen by the leading bytes; anything else is kBadMagic.
[[nodiscard]] InflateResult decompress_auto(ByteView data, InflateOptions options = {});

}  // namespace braid
