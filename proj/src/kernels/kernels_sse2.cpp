#include <emmintrin.h>

#include "braid/kernels.hpp"

namespace braid::kernels::sse2 {

size_t match_length(const uint8_t* a, const uint8_t* b, size_t max) {
  size_t n = 0;
  while (n + 16 <= max) {
    const __m128i va = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a + n));
    const __m128i vb = _mm_loadu_si128(reinterpret_cast<const __m128i*>(b + n));
    const unsigned eq = static_cast<unsigned>(_mm_movemask_epi8(_mm_cmpeq_epi8(va, vb)));
    if (eq != 0xffffu) return n + static_cast<size_t>(__builtin_ctz(~eq));
    n += 16;
  }
  return n + scalar::match_length(a + n, b + n, max - n);
}

namespace {

constexpr uint32_t kAdlerMod = 65521;
constexpr size_t kChunk = 5552 / 16 * 16;

uint32_t hsum_epi32(__m128i v) {
  v = _mm_add_epi32(v, _mm_shuffle_epi32(v, _MM_SHUFFLE(1, 0, 3, 2)));
  v = _mm_add_epi32(v, _mm_shuffle_epi32(v, _MM_SHUFFLE(2, 3, 0, 1)));
  return static_cast<uint32_t>(_mm_cvtsi128_si32(v));
}

}  // namespace

uint32_t adler32(uint32_t adler, const uint8_t* data, size_t size) {
  uint64_t a = adler & 0xffff;
  uint64_t b = adler >> 16;
  const __m128i zero = _mm_setzero_si128();
  const __m128i w_lo = _mm_setr_epi16(16, 15, 14, 13, 12, 11, 10, 9);
  const __m128i w_hi = _mm_setr_epi16(8, 7, 6, 5, 4, 3, 2, 1);

  while (size >= 16) {
    const size_t n = (size < kChunk ? size : kChunk) / 16 * 16;
    __m128i v_sum = zero;     // byte sums (two 64-bit lanes)
    __m128i v_prefix = zero;  // running total of earlier block sums
    __m128i v_weighted = zero;
    for (size_t off = 0; off < n; off += 16) {
      const __m128i block = _mm_loadu_si128(reinterpret_cast<const __m128i*>(data + off));
      v_prefix = _mm_add_epi32(v_prefix, v_sum);
      v_sum = _mm_add_epi32(v_sum, _mm_sad_epu8(block, zero));
      v_weighted = _mm_add_epi32(v_weighted, _mm_madd_epi16(_mm_unpacklo_epi8(block, zero), w_lo));
      v_weighted = _mm_add_epi32(v_weighted, _mm_madd_epi16(_mm_unpackhi_epi8(block, zero), w_hi));
    }
    b += a * n + 16ull * hsum_epi32(v_prefix) + hsum_epi32(v_weighted);
    a += hsum_epi32(v_sum);
    a %= kAdlerMod;
    b %= kAdlerMod;
    data += n;
    size -= n;
  }
  return scalar::adler32(static_cast<uint32_t>((b << 16) | a), data, size);
}

}  // namespace braid::kernels::sse2
