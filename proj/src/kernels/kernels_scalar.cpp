#include "braid/kernels.hpp"

namespace braid::kernels::scalar {

size_t match_length(const uint8_t* a, const uint8_t* b, size_t max) {
  size_t n = 0;
  while (n < max && a[n] == b[n]) ++n;
  return n;
}

namespace {
constexpr uint32_t kAdlerMod = 65521;
// Largest n with 255 n (n + 1) / 2 + (n + 1) (kAdlerMod - 1) < 2^32.
constexpr size_t kAdlerNmax = 5552;
}  // namespace

uint32_t adler32(uint32_t adler, const uint8_t* data, size_t size) {
  uint32_t a = adler & 0xffff;
  uint32_t b = adler >> 16;
  while (size > 0) {
    const size_t n = size < kAdlerNmax ? size : kAdlerNmax;
    for (size_t i = 0; i < n; ++i) {
      a += data[i];
      b += a;
    }
    a %= kAdlerMod;
    b %= kAdlerMod;
    data += n;
    size -= n;
  }
  return (b << 16) | a;
}

}  // namespace braid::kernels::scalar
