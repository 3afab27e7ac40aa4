#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace braid {

class HuffmanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Canonical prefix code: lengths per symbol (0 = unused) and the codewords
/// RFC 1951 derives from them (numeric, most significant bit first).
struct HuffmanCode {
  std::vector<uint8_t> lengths;
  std::vector<uint16_t> codes;

  [[nodiscard]] size_t used_symbols() const;
};

/// Optimal code lengths under a maximum length (package-merge). Symbols with
/// zero frequency get length 0; a lone used symbol gets length 1. Throws
/// HuffmanError when every frequency is zero or the symbols cannot fit in
/// `max_bits`.
[[nodiscard]] std::vector<uint8_t> length_limited_code_lengths(std::span<const size_t> freqs, int max_bits);

/// Canonical codewords for the given lengths (shorter codes first, ties in
/// symbol order).
[[nodiscard]] std::vector<uint16_t> canonical_codes(std::span<const uint8_t> lengths);

/// Length-limited canonical Huffman code for `freqs`.
[[nodiscard]] HuffmanCode build_length_limited_huffman(std::span<const size_t> freqs, int max_bits = 15);

/// Kraft sum times 2^max_bits, exact for lengths up to max_bits. A complete
/// code sums to exactly 1 << max_bits.
[[nodiscard]] uint64_t kraft_sum_scaled(std::span<const uint8_t> lengths, int max_bits = 15);

/// Reverses the low `bits` bits of `code` (Huffman codes are sent MSB first
/// inside an LSB-first bit stream).
[[nodiscard]] constexpr uint32_t reverse_bits(uint32_t code, int bits) {
  uint32_t r = 0;
  for (int i = 0; i < bits; ++i) {
    r = (r << 1) | (code & 1u);
    code >>= 1;
  }
  return r;
}

}  // namespace braid
