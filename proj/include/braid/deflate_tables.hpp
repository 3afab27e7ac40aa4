#pragma once

#include <array>
#include <cstdint>

// RFC 1951 length/distance symbol mapping.
namespace braid::deflate {

inline constexpr int kMinMatch = 3;
inline constexpr int kMaxMatch = 258;
inline constexpr int kWindowSize = 32768;

inline constexpr int kNumLitLenSymbols = 288;
inline constexpr int kNumDistSymbols = 32;
inline constexpr int kEndOfBlock = 256;
inline constexpr int kMaxCodeBits = 15;

inline constexpr std::array<uint16_t, 29> kLengthBase = {
    3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15, 17, 19, 23, 27,
    31, 35, 43, 51, 59, 67, 83, 99, 115, 131, 163, 195, 227, 258};
inline constexpr std::array<uint8_t, 29> kLengthExtra = {
    0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2,
    2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 0};
inline constexpr std::array<uint16_t, 30> kDistBase = {
    1, 2, 3, 4, 5, 7, 9, 13, 17, 25, 33, 49, 65, 97, 129,
    193, 257, 385, 513, 769, 1025, 1537, 2049, 3073, 4097,
    6145, 8193, 12289, 16385, 24577};
inline constexpr std::array<uint8_t, 30> kDistExtra = {
    0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6,
    6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13, 13};

namespace detail {

constexpr std::array<uint16_t, kMaxMatch + 1> make_length_symbols() {
  std::array<uint16_t, kMaxMatch + 1> table{};
  for (int sym = 0; sym < 29; ++sym) {
    const int last = sym + 1 < 29 ? kLengthBase[sym + 1] - 1 : kMaxMatch;
    for (int len = kLengthBase[sym]; len <= last; ++len) table[len] = static_cast<uint16_t>(257 + sym);
  }
  return table;
}

}  // namespace detail

inline constexpr auto kLengthSymbol = detail::make_length_symbols();

/// Literal/length symbol (257..285) for a match length in [3, 258].
constexpr int length_symbol(int length) { return kLengthSymbol[length]; }
constexpr int length_extra_bits(int length) { return kLengthExtra[kLengthSymbol[length] - 257]; }
constexpr int length_extra_value(int length) { return length - kLengthBase[kLengthSymbol[length] - 257]; }

/// Distance symbol (0..29) for a distance in [1, 32768].
constexpr int distance_symbol(int dist) {
  if (dist <= 4) return dist - 1;
  // Two symbols per power of two above 4.
  const int d = dist - 1;
  int msb = 31 - __builtin_clz(static_cast<unsigned>(d));
  return 2 * msb + ((d >> (msb - 1)) & 1);
}
constexpr int distance_extra_bits(int dist) { return kDistExtra[distance_symbol(dist)]; }
constexpr int distance_extra_value(int dist) { return dist - kDistBase[distance_symbol(dist)]; }

}  // namespace braid::deflate
