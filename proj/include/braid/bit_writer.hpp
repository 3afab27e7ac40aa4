#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace braid {

/// LSB-first bit packer (RFC 1951 bit order).
class BitWriter {
 public:
  void write_bits(uint32_t value, int count) {
    for (int i = 0; i < count; ++i) {
      if (bit_ == 0) bytes_.push_back(0);
      bytes_.back() = static_cast<uint8_t>(bytes_.back() | (((value >> i) & 1u) << bit_));
      bit_ = (bit_ + 1) & 7;
    }
  }

  /// Writes a Huffman codeword most-significant bit first.
  void write_code(uint32_t code, int length) {
    for (int i = length - 1; i >= 0; --i) write_bits((code >> i) & 1u, 1);
  }

  /// Pads with zero bits up to the next byte boundary.
  void align_to_byte() { bit_ = 0; }

  void write_byte(uint8_t b) {
    align_to_byte();
    bytes_.push_back(b);
  }

  [[nodiscard]] size_t bit_count() const { return bytes_.size() * 8 - (bit_ == 0 ? 0 : 8 - bit_); }
  /// Bit offset within the current byte (0 when aligned).
  [[nodiscard]] int bit_offset() const { return bit_; }

  [[nodiscard]] const std::vector<uint8_t>& bytes() const { return bytes_; }
  /// Flushes the partial byte (zero padded) and hands over the buffer.
  std::vector<uint8_t> take() {
    bit_ = 0;
    return std::move(bytes_);
  }

 private:
  std::vector<uint8_t> bytes_;
  int bit_ = 0;
};

}  // namespace braid
