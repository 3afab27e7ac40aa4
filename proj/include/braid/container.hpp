#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "braid/lz_store.hpp"

namespace braid {

enum class ContainerFormat { kRaw, kZlib, kGzip };

[[nodiscard]] std::string_view format_name(ContainerFormat f);
[[nodiscard]] std::optional<ContainerFormat> parse_format(std::string_view name);

inline constexpr size_t kGzipHeaderSize = 10;
inline constexpr size_t kGzipTrailerSize = 8;

/// Frames a raw DEFLATE payload. gzip: fixed 10-byte header (MTIME 0,
/// XFL 2, OS 255), CRC-32 and ISIZE trailer. zlib: 0x78 0xDA header and a
/// big-endian Adler-32 trailer. raw: payload unchanged.
[[nodiscard]] Bytes wrap_container(ByteView deflate_payload, ContainerFormat format, ByteView original);

}  // namespace braid
