#include "braid/inflate.hpp"

#include <array>
#include <vector>

#include "braid/checksum.hpp"
#include "braid/deflate_tables.hpp"

namespace braid {

namespace {

constexpr std::array<uint8_t, 19> kCodeLengthOrder = {16, 17, 18, 0, 8, 7, 9, 6, 10, 5, 11, 4, 12, 3, 13, 2, 14, 1, 15};

[[noreturn]] void fail(InflateErrc code, const std::string& detail) { throw InflateError(code, detail); }

class BitReader {
 public:
  explicit BitReader(ByteView in) : in_(in) {}

  uint32_t bits(int n) {
    while (count_ < n) {
      if (pos_ >= in_.size()) fail(InflateErrc::kTruncated, "input ends inside the deflate stream");
      buf_ |= static_cast<uint64_t>(in_[pos_++]) << count_;
      count_ += 8;
    }
    const auto v = static_cast<uint32_t>(buf_ & ((1ull << n) - 1));
    buf_ >>= n;
    count_ -= n;
    return v;
  }

  void align() {
    buf_ >>= count_ % 8;
    count_ -= count_ % 8;
  }

  uint8_t byte() {
    if (count_ >= 8) return static_cast<uint8_t>(bits(8));
    if (pos_ >= in_.size()) fail(InflateErrc::kTruncated, "input ends inside a stored block");
    return in_[pos_++];
  }

  /// Bytes consumed so far, counting whole bytes only.
  [[nodiscard]] size_t consumed() const { return pos_ - static_cast<size_t>(count_ / 8); }

 private:
  ByteView in_;
  size_t pos_ = 0;
  uint64_t buf_ = 0;
  int count_ = 0;
};

/// Canonical decoding table in the style of counts-per-length plus
/// symbols sorted by code.
struct Decoder {
  std::array<uint16_t, 16> count{};
  std::vector<uint16_t> symbol;
};

enum class TreeKind { kStrict, kDistance };

Decoder build_decoder(const uint8_t* lengths, size_t n, TreeKind kind, const char* what) {
  Decoder d;
  d.symbol.assign(n, 0);
  for (size_t s = 0; s < n; ++s) ++d.count[lengths[s]];
  const size_t used = n - d.count[0];
  int left = 1;
  for (int len = 1; len <= 15; ++len) {
    left <<= 1;
    left -= d.count[static_cast<size_t>(len)];
    if (left < 0) fail(InflateErrc::kOversubscribedTree, std::string(what) + " tree is oversubscribed");
  }
  if (left > 0) {
    const bool allowed = kind == TreeKind::kDistance && used <= 1;
    if (!allowed) fail(InflateErrc::kIncompleteTree, std::string(what) + " tree is incomplete");
  }
  std::array<uint16_t, 16> offs{};
  for (size_t len = 1; len < 15; ++len) offs[len + 1] = static_cast<uint16_t>(offs[len] + d.count[len]);
  for (size_t s = 0; s < n; ++s) {
    if (lengths[s] != 0) d.symbol[offs[lengths[s]]++] = static_cast<uint16_t>(s);
  }
  return d;
}

int decode(BitReader& br, const Decoder& d) {
  int code = 0;
  int first = 0;
  int index = 0;
  for (size_t len = 1; len <= 15; ++len) {
    code |= static_cast<int>(br.bits(1));
    const int count = d.count[len];
    if (code - count < first) return d.symbol[static_cast<size_t>(index + (code - first))];
    index += count;
    first += count;
    first <<= 1;
    code <<= 1;
  }
  // Only reachable with an incomplete (single-code) tree.
  fail(InflateErrc::kInvalidSymbol, "bit pattern matches no code");
}

void inflate_codes(BitReader& br, Bytes& out, const Decoder& litlen, const Decoder& dist) {
  for (;;) {
    const int sym = decode(br, litlen);
    if (sym < 256) {
      out.push_back(static_cast<uint8_t>(sym));
      continue;
    }
    if (sym == 256) return;
    if (sym > 285) fail(InflateErrc::kInvalidSymbol, "literal/length symbol " + std::to_string(sym));
    const auto li = static_cast<size_t>(sym - 257);
    const size_t len = deflate::kLengthBase[li] + br.bits(deflate::kLengthExtra[li]);
    const int dsym = decode(br, dist);
    if (dsym > 29) fail(InflateErrc::kInvalidSymbol, "distance symbol " + std::to_string(dsym));
    const auto di = static_cast<size_t>(dsym);
    const size_t d = deflate::kDistBase[di] + br.bits(deflate::kDistExtra[di]);
    if (d > out.size()) {
      fail(InflateErrc::kDistanceTooFar,
           "distance " + std::to_string(d) + " exceeds " + std::to_string(out.size()) + " bytes of output");
    }
    size_t from = out.size() - d;
    for (size_t i = 0; i < len; ++i) {
      const uint8_t b = out[from++];
      out.push_back(b);
    }
  }
}

void inflate_stored(BitReader& br, Bytes& out) {
  br.align();
  const uint16_t len = static_cast<uint16_t>(br.byte() | (br.byte() << 8));
  const uint16_t nlen = static_cast<uint16_t>(br.byte() | (br.byte() << 8));
  if (static_cast<uint16_t>(~nlen) != len) fail(InflateErrc::kStoredLengthMismatch, "stored LEN/NLEN mismatch");
  for (uint32_t i = 0; i < len; ++i) out.push_back(br.byte());
}

const std::pair<Decoder, Decoder>& fixed_decoders() {
  static const std::pair<Decoder, Decoder> fixed = [] {
    std::array<uint8_t, 288> ll{};
    for (size_t i = 0; i < 288; ++i) ll[i] = i < 144 ? 8 : i < 256 ? 9 : i < 280 ? 7 : 8;
    std::array<uint8_t, 32> dl{};
    dl.fill(5);
    return std::make_pair(build_decoder(ll.data(), ll.size(), TreeKind::kStrict, "fixed literal/length"),
                          build_decoder(dl.data(), dl.size(), TreeKind::kStrict, "fixed distance"));
  }();
  return fixed;
}

void inflate_dynamic(BitReader& br, Bytes& out, BlockTrace* trace) {
  const size_t hlit = br.bits(5) + 257;
  const size_t hdist = br.bits(5) + 1;
  const size_t hclen = br.bits(4) + 4;
  if (hlit > 286 || hdist > 30) fail(InflateErrc::kBadCodeLengths, "too many length or distance codes");
  std::array<uint8_t, 19> clen{};
  for (size_t i = 0; i < hclen; ++i) clen[kCodeLengthOrder[i]] = static_cast<uint8_t>(br.bits(3));
  const Decoder clen_dec = build_decoder(clen.data(), clen.size(), TreeKind::kStrict, "code-length");

  std::array<uint8_t, 316> lengths{};
  size_t idx = 0;
  while (idx < hlit + hdist) {
    const int sym = decode(br, clen_dec);
    if (sym < 16) {
      lengths[idx++] = static_cast<uint8_t>(sym);
      continue;
    }
    uint8_t value = 0;
    size_t repeat = 0;
    if (sym == 16) {
      if (idx == 0) fail(InflateErrc::kBadCodeLengths, "repeat with no previous length");
      value = lengths[idx - 1];
      repeat = 3 + br.bits(2);
    } else if (sym == 17) {
      repeat = 3 + br.bits(3);
    } else {
      repeat = 11 + br.bits(7);
    }
    if (idx + repeat > hlit + hdist) fail(InflateErrc::kBadCodeLengths, "code-length repeat overruns");
    for (size_t k = 0; k < repeat; ++k) lengths[idx++] = value;
  }
  if (trace != nullptr) {
    trace->clen.assign(clen.begin(), clen.end());
    trace->litlen.assign(lengths.begin(), lengths.begin() + static_cast<std::ptrdiff_t>(hlit));
    trace->dist.assign(lengths.begin() + static_cast<std::ptrdiff_t>(hlit),
                       lengths.begin() + static_cast<std::ptrdiff_t>(hlit + hdist));
  }
  if (lengths[256] == 0) fail(InflateErrc::kMissingEndOfBlock, "no code for end-of-block");
  const Decoder litlen = build_decoder(lengths.data(), hlit, TreeKind::kStrict, "literal/length");
  const Decoder dist = build_decoder(lengths.data() + hlit, hdist, TreeKind::kDistance, "distance");
  inflate_codes(br, out, litlen, dist);
}

InflateResult inflate_stream(ByteView data, InflateOptions options) {
  BitReader br(data);
  InflateResult r;
  bool last = false;
  while (!last) {
    last = br.bits(1) != 0;
    const uint32_t type = br.bits(2);
    BlockTrace trace;
    BlockTrace* tp = options.trace_blocks ? &trace : nullptr;
    const size_t before = r.output.size();
    switch (type) {
      case 0:
        inflate_stored(br, r.output);
        break;
      case 1:
        inflate_codes(br, r.output, fixed_decoders().first, fixed_decoders().second);
        break;
      case 2:
        inflate_dynamic(br, r.output, tp);
        break;
      default:
        fail(InflateErrc::kInvalidBlockType, "block type 3 is reserved");
    }
    if (tp != nullptr) {
      trace.type = static_cast<int>(type);
      trace.final = last;
      trace.output_bytes = r.output.size() - before;
      r.blocks.push_back(std::move(trace));
    }
  }
  br.align();
  r.consumed = br.consumed();
  return r;
}

uint32_t read_le32(ByteView d, size_t at) {
  return static_cast<uint32_t>(d[at]) | static_cast<uint32_t>(d[at + 1]) << 8 | static_cast<uint32_t>(d[at + 2]) << 16 |
         static_cast<uint32_t>(d[at + 3]) << 24;
}

uint32_t read_be32(ByteView d, size_t at) {
  return static_cast<uint32_t>(d[at]) << 24 | static_cast<uint32_t>(d[at + 1]) << 16 |
         static_cast<uint32_t>(d[at + 2]) << 8 | static_cast<uint32_t>(d[at + 3]);
}

void require(ByteView d, size_t n, const char* what) {
  if (d.size() < n) fail(InflateErrc::kTruncated, std::string("input ends inside the ") + what);
}

}  // namespace

std::string_view errc_name(InflateErrc e) {
  switch (e) {
    case InflateErrc::kTruncated:
      return "truncated input";
    case InflateErrc::kInvalidBlockType:
      return "invalid block type";
    case InflateErrc::kStoredLengthMismatch:
      return "stored length mismatch";
    case InflateErrc::kOversubscribedTree:
      return "oversubscribed tree";
    case InflateErrc::kIncompleteTree:
      return "incomplete tree";
    case InflateErrc::kBadCodeLengths:
      return "bad code lengths";
    case InflateErrc::kMissingEndOfBlock:
      return "missing end-of-block code";
    case InflateErrc::kInvalidSymbol:
      return "invalid symbol";
    case InflateErrc::kDistanceTooFar:
      return "distance too far";
    case InflateErrc::kBadMagic:
      return "bad magic";
    case InflateErrc::kUnsupportedMethod:
      return "unsupported method";
    case InflateErrc::kBadHeaderFlags:
      return "bad header flags";
    case InflateErrc::kHeaderCheck:
      return "header check failed";
    case InflateErrc::kCrcMismatch:
      return "CRC mismatch";
    case InflateErrc::kSizeMismatch:
      return "ISIZE mismatch";
    case InflateErrc::kAdlerMismatch:
      return "Adler-32 mismatch";
    case InflateErrc::kTrailingData:
      return "trailing data";
  }
  return "unknown";
}

InflateError::InflateError(InflateErrc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

InflateResult inflate(ByteView deflate_bytes, InflateOptions options) { return inflate_stream(deflate_bytes, options); }

InflateResult zlib_decompress(ByteView data, InflateOptions options) {
  require(data, 2, "zlib header");
  const uint8_t cmf = data[0];
  const uint8_t flg = data[1];
  if ((cmf & 0x0F) != 8 || (cmf >> 4) > 7) fail(InflateErrc::kUnsupportedMethod, "zlib CM/CINFO");
  if ((static_cast<unsigned>(cmf) * 256 + flg) % 31 != 0) fail(InflateErrc::kHeaderCheck, "zlib FCHECK");
  if ((flg & 0x20) != 0) fail(InflateErrc::kBadHeaderFlags, "preset dictionaries are not supported");
  InflateResult r = inflate_stream(data.subspan(2), options);
  const size_t at = 2 + r.consumed;
  require(data, at + 4, "Adler-32 trailer");
  if (read_be32(data, at) != adler32(r.output)) fail(InflateErrc::kAdlerMismatch, "zlib trailer");
  r.consumed = at + 4;
  r.checksum_verified = true;
  return r;
}

InflateResult gunzip(ByteView data, InflateOptions options) {
  require(data, kGzipHeaderSize, "gzip header");
  if (data[0] != 0x1F || data[1] != 0x8B) fail(InflateErrc::kBadMagic, "not a gzip member");
  if (data[2] != 8) fail(InflateErrc::kUnsupportedMethod, "gzip CM " + std::to_string(data[2]));
  const uint8_t flg = data[3];
  if ((flg & 0xE0) != 0) fail(InflateErrc::kBadHeaderFlags, "reserved gzip flag bits set");
  size_t at = kGzipHeaderSize;
  if ((flg & 0x04) != 0) {
    require(data, at + 2, "gzip FEXTRA");
    const size_t xlen = data[at] | (static_cast<size_t>(data[at + 1]) << 8);
    at += 2 + xlen;
  }
  for (const uint8_t bit : {uint8_t{0x08}, uint8_t{0x10}}) {
    if ((flg & bit) == 0) continue;
    while (true) {
      require(data, at + 1, "gzip header string");
      if (data[at++] == 0) break;
    }
  }
  if ((flg & 0x02) != 0) {
    require(data, at + 2, "gzip FHCRC");
    const uint32_t want = crc32(data.first(at)) & 0xFFFF;
    if ((data[at] | (static_cast<uint32_t>(data[at + 1]) << 8)) != want) {
      fail(InflateErrc::kHeaderCheck, "gzip header CRC");
    }
    at += 2;
  }
  require(data, at, "gzip header");
  InflateResult r = inflate_stream(data.subspan(at), options);
  at += r.consumed;
  require(data, at + kGzipTrailerSize, "gzip trailer");
  if (read_le32(data, at) != crc32(r.output)) fail(InflateErrc::kCrcMismatch, "gzip trailer CRC-32");
  if (read_le32(data, at + 4) != static_cast<uint32_t>(r.output.size())) {
    fail(InflateErrc::kSizeMismatch, "gzip trailer ISIZE");
  }
  r.consumed = at + kGzipTrailerSize;
  r.checksum_verified = true;
  return r;
}

InflateResult decompress(ByteView data, ContainerFormat format, InflateOptions options) {
  InflateResult r;
  switch (format) {
    case ContainerFormat::kRaw:
      r = inflate(data, options);
      break;
    case ContainerFormat::kZlib:
      r = zlib_decompress(data, options);
      break;
    case ContainerFormat::kGzip:
      r = gunzip(data, options);
      break;
  }
  if (r.consumed != data.size()) {
    fail(InflateErrc::kTrailingData, std::to_string(data.size() - r.consumed) + " bytes after the stream");
  }
  return r;
}

InflateResult decompress_auto(ByteView data, InflateOptions options) {
  if (data.size() >= 2 && data[0] == 0x1F && data[1] == 0x8B) return decompress(data, ContainerFormat::kGzip, options);
  if (data.size() >= 2 && (data[0] & 0x0F) == 8 && (static_cast<unsigned>(data[0]) * 256 + data[1]) % 31 == 0) {
    return decompress(data, ContainerFormat::kZlib, options);
  }
  fail(InflateErrc::kBadMagic, "neither a gzip nor a zlib stream");
}

}  // namespace braid
