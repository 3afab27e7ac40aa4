#pragma once

#include <cstdint>
#include <span>

namespace braid {

/// CRC-32 as used by gzip (reflected polynomial 0xEDB88320, pre- and
/// post-inversion). Pass a previous result as `crc` to continue.
[[nodiscard]] uint32_t crc32(std::span<const uint8_t> data, uint32_t crc = 0);

/// Adler-32 as used by zlib. Pass a previous result as `adler` to continue.
[[nodiscard]] uint32_t adler32(std::span<const uint8_t> data, uint32_t adler = 1);

}  // namespace braid
