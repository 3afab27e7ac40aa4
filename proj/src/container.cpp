#include "braid/container.hpp"

#include "braid/checksum.hpp"

namespace braid {

std::string_view format_name(ContainerFormat f) {
  switch (f) {
    case ContainerFormat::kRaw:
      return "raw";
    case ContainerFormat::kZlib:
      return "zlib";
    case ContainerFormat::kGzip:
      return "gzip";
  }
  return "?";
}

std::optional<ContainerFormat> parse_format(std::string_view name) {
  if (name == "raw") return ContainerFormat::kRaw;
  if (name == "zlib") return ContainerFormat::kZlib;
  if (name == "gzip") return ContainerFormat::kGzip;
  return std::nullopt;
}

Bytes wrap_container(ByteView deflate_payload, ContainerFormat format, ByteView original) {
  Bytes out;
  switch (format) {
    case ContainerFormat::kRaw:
      out.assign(deflate_payload.begin(), deflate_payload.end());
      break;
    case ContainerFormat::kZlib: {
      out.reserve(deflate_payload.size() + 6);
      out.push_back(0x78);
      out.push_back(0xDA);
      out.insert(out.end(), deflate_payload.begin(), deflate_payload.end());
      const uint32_t a = adler32(original);
      for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<uint8_t>(a >> shift));
      break;
    }
    case ContainerFormat::kGzip: {
      out = {0x1F, 0x8B, 0x08, 0x00, 0, 0, 0, 0, 0x02, 0xFF};
      out.reserve(deflate_payload.size() + kGzipHeaderSize + kGzipTrailerSize);
      out.insert(out.end(), deflate_payload.begin(), deflate_payload.end());
      const uint32_t crc = crc32(original);
      const auto isize = static_cast<uint32_t>(original.size());
      for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<uint8_t>(crc >> shift));
      for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<uint8_t>(isize >> shift));
      break;
    }
  }
  return out;
}

}  // namespace braid
