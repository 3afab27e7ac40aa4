#include "braid/baselines.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace braid::baselines {

namespace {

constexpr size_t kHeaderSize = 13;

/// Newest-first index of earlier positions by their first two bytes, plus
/// the last position of every single byte.
class PairIndex {
 public:
  explicit PairIndex(size_t n) : prev_(n, -1) { head_.fill(-1); last_.fill(-1); }

  void insert(ByteView in, size_t pos) {
    last_[in[pos]] = static_cast<int64_t>(pos);
    if (pos + 1 >= in.size()) return;
    const size_t key = static_cast<size_t>(in[pos]) << 8 | in[pos + 1];
    prev_[pos] = head_[key];
    head_[key] = static_cast<int64_t>(pos);
  }

  [[nodiscard]] int64_t head(ByteView in, size_t pos) const {
    if (pos + 1 >= in.size()) return -1;
    return head_[static_cast<size_t>(in[pos]) << 8 | in[pos + 1]];
  }
  [[nodiscard]] int64_t prev(size_t pos) const { return prev_[pos]; }
  [[nodiscard]] int64_t last(uint8_t b) const { return last_[b]; }

 private:
  std::array<int64_t, 65536> head_{};
  std::array<int64_t, 256> last_{};
  std::vector<int64_t> prev_;
};

struct Found {
  size_t offset = 0;
  size_t length = 0;
};

/// Longest, then most recent, match for input[pos..] among positions at
/// most `window` back. `cap(offset)` bounds the length at that offset.
template <typename Cap>
Found longest(ByteView in, size_t pos, size_t window, const PairIndex& index, Cap cap) {
  Found best;
  for (int64_t p = index.head(in, pos); p >= 0; p = index.prev(static_cast<size_t>(p))) {
    const size_t off = pos - static_cast<size_t>(p);
    if (off > window) break;
    const size_t limit = cap(off);
    if (limit <= best.length) continue;
    size_t l = 0;
    while (l < limit && in[static_cast<size_t>(p) + l] == in[pos + l]) ++l;
    if (l > best.length) best = {off, l};
  }
  if (best.length == 0) {
    const int64_t p = index.last(in[pos]);
    if (p >= 0 && pos - static_cast<size_t>(p) <= window && cap(pos - static_cast<size_t>(p)) >= 1) {
      best = {pos - static_cast<size_t>(p), 1};
    }
  }
  return best;
}

void put_be32(Bytes& out, uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<uint8_t>(v >> s));
}

uint32_t get_be32(ByteView in, size_t at) {
  return static_cast<uint32_t>(in[at]) << 24 | static_cast<uint32_t>(in[at + 1]) << 16 |
         static_cast<uint32_t>(in[at + 2]) << 8 | in[at + 3];
}

Bytes header(const char* magic, size_t original, size_t count) {
  Bytes out(magic, magic + 4);
  out.push_back(kFileVersion);
  put_be32(out, static_cast<uint32_t>(original));
  put_be32(out, static_cast<uint32_t>(count));
  return out;
}

struct Header {
  size_t original;
  size_t count;
};

Header read_header(ByteView file, const char* magic) {
  if (file.size() < kHeaderSize) throw FormatError("file shorter than its header");
  if (!std::equal(magic, magic + 4, file.begin())) throw FormatError(std::string("missing ") + magic + " magic");
  if (file[4] != kFileVersion) throw FormatError("unsupported version " + std::to_string(file[4]));
  return {get_be32(file, 5), get_be32(file, 9)};
}

void check_params(size_t search, size_t lookahead) {
  if (search < 1 || search > 65535) throw std::invalid_argument("search_size must be in [1, 65535]");
  if (lookahead < 1 || lookahead > 255) throw std::invalid_argument("lookahead_size must be in [1, 255]");
}

}  // namespace

std::vector<Lz77Tuple> lz77_encode(ByteView input, Lz77Params params) {
  check_params(params.search_size, params.lookahead_size);
  std::vector<Lz77Tuple> out;
  PairIndex index(input.size());
  size_t pos = 0;
  size_t indexed = 0;
  while (pos < input.size()) {
    const size_t remaining = input.size() - pos;
    // No overlap: the copied bytes must end before the lookahead starts.
    const auto cap = [&](size_t off) { return std::min({off, params.lookahead_size, remaining}); };
    const Found f = longest(input, pos, params.search_size, index, cap);
    const size_t step = f.length + 1;
    Lz77Tuple t;
    if (f.length == 0) {
      t.next = input[pos];
    } else {
      t.offset = static_cast<uint16_t>(f.offset);
      t.length = static_cast<uint8_t>(f.length);
      t.next = pos + f.length < input.size() ? input[pos + f.length] : 0;
    }
    out.push_back(t);
    const size_t end = std::min(input.size(), pos + step);
    for (; indexed < end; ++indexed) index.insert(input, indexed);
    pos = end;
  }
  return out;
}

Bytes lz77_decode(std::span<const Lz77Tuple> tuples, size_t original_length) {
  Bytes out;
  out.reserve(original_length);
  for (const Lz77Tuple& t : tuples) {
    if (t.length > 0) {
      if (t.offset == 0 || t.offset > out.size()) throw FormatError("tuple offset reaches before the output");
      size_t from = out.size() - t.offset;
      for (size_t i = 0; i < t.length; ++i) {
        const uint8_t b = out[from++];
        out.push_back(b);
      }
    } else if (t.offset != 0) {
      throw FormatError("tuple with an offset but no length");
    }
    if (out.size() < original_length) out.push_back(t.next);
  }
  if (out.size() != original_length) throw FormatError("decoded length differs from the recorded length");
  return out;
}

std::vector<LzssItem> lzss_encode(ByteView input, LzssParams params) {
  check_params(params.search_size, params.lookahead_size);
  if (params.min_match < 1) throw std::invalid_argument("min_match must be at least 1");
  std::vector<LzssItem> out;
  PairIndex index(input.size());
  size_t pos = 0;
  size_t indexed = 0;
  while (pos < input.size()) {
    const size_t remaining = input.size() - pos;
    const auto cap = [&](size_t) { return std::min(params.lookahead_size, remaining); };
    const Found f = longest(input, pos, params.search_size, index, cap);
    size_t step = 1;
    if (f.length > params.min_match) {
      out.push_back(LzssItem{true, static_cast<uint16_t>(f.offset), static_cast<uint8_t>(f.length), 0});
      step = f.length;
    } else {
      out.push_back(LzssItem{false, 0, 0, input[pos]});
    }
    for (; indexed < pos + step; ++indexed) index.insert(input, indexed);
    pos += step;
  }
  return out;
}

Bytes lzss_decode(std::span<const LzssItem> items) {
  Bytes out;
  for (const LzssItem& it : items) {
    if (!it.pointer) {
      out.push_back(it.literal);
      continue;
    }
    if (it.offset == 0 || it.offset > out.size()) throw FormatError("pointer reaches before the output");
    size_t from = out.size() - it.offset;
    for (size_t i = 0; i < it.length; ++i) {
      const uint8_t b = out[from++];
      out.push_back(b);
    }
  }
  return out;
}

Bytes serialize_tokens(std::span<const Lz77Tuple> tuples) {
  Bytes out;
  out.reserve(tuples.size() * 4);
  for (const Lz77Tuple& t : tuples) {
    out.push_back(static_cast<uint8_t>(t.offset >> 8));
    out.push_back(static_cast<uint8_t>(t.offset & 0xff));
    out.push_back(t.length);
    out.push_back(t.next);
  }
  return out;
}

std::vector<Lz77Tuple> parse_tokens(ByteView bytes) {
  if (bytes.size() % 4 != 0) throw FormatError("token bytes are not a whole number of tuples");
  std::vector<Lz77Tuple> out(bytes.size() / 4);
  for (size_t i = 0; i < out.size(); ++i) {
    const ByteView b = bytes.subspan(i * 4, 4);
    out[i] = Lz77Tuple{static_cast<uint16_t>(b[0] << 8 | b[1]), b[2], b[3]};
  }
  return out;
}

Bytes serialize_items(std::span<const LzssItem> items) {
  Bytes out;
  for (size_t g = 0; g < items.size(); g += 8) {
    const size_t flag_at = out.size();
    out.push_back(0);
    for (size_t i = g; i < std::min(items.size(), g + 8); ++i) {
      const LzssItem& it = items[i];
      if (it.pointer) {
        out[flag_at] = static_cast<uint8_t>(out[flag_at] | (1u << (i - g)));
        out.push_back(static_cast<uint8_t>(it.offset >> 8));
        out.push_back(static_cast<uint8_t>(it.offset & 0xff));
        out.push_back(it.length);
      } else {
        out.push_back(it.literal);
      }
    }
  }
  return out;
}

std::vector<LzssItem> parse_items(ByteView bytes, size_t count) {
  std::vector<LzssItem> out;
  out.reserve(count);
  size_t at = 0;
  auto need = [&](size_t n) {
    if (at + n > bytes.size()) throw FormatError("item bytes end early");
  };
  while (out.size() < count) {
    need(1);
    const uint8_t flags = bytes[at++];
    for (size_t i = 0; i < 8 && out.size() < count; ++i) {
      if ((flags >> i) & 1u) {
        need(3);
        out.push_back(LzssItem{true, static_cast<uint16_t>(bytes[at] << 8 | bytes[at + 1]), bytes[at + 2], 0});
        at += 3;
      } else {
        need(1);
        out.push_back(LzssItem{false, 0, 0, bytes[at++]});
      }
    }
  }
  if (at != bytes.size()) throw FormatError("bytes left after the last item");
  return out;
}

Bytes lz77_compress(ByteView input, Lz77Params params) {
  const std::vector<Lz77Tuple> tuples = lz77_encode(input, params);
  Bytes out = header("LZ77", input.size(), tuples.size());
  const Bytes body = serialize_tokens(tuples);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Bytes lz77_decompress(ByteView file) {
  const Header h = read_header(file, "LZ77");
  const ByteView body = file.subspan(kHeaderSize);
  if (body.size() != h.count * 4) throw FormatError("tuple count does not match the file size");
  return lz77_decode(parse_tokens(body), h.original);
}

Bytes lzss_compress(ByteView input, LzssParams params) {
  const std::vector<LzssItem> items = lzss_encode(input, params);
  Bytes out = header("LZSS", input.size(), items.size());
  const Bytes body = serialize_items(items);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Bytes lzss_decompress(ByteView file) {
  const Header h = read_header(file, "LZSS");
  Bytes out = lzss_decode(parse_items(file.subspan(kHeaderSize), h.count));
  if (out.size() != h.original) throw FormatError("decoded length differs from the recorded length");
  return out;
}

}  // namespace braid::baselines
