#include <immintrin.h>

#include "braid/kernels.hpp"

namespace braid::kernels::avx2 {

size_t match_length(const uint8_t* a, const uint8_t* b, size_t max) {
  size_t n = 0;
  while (n + 32 <= max) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + n));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + n));
    const auto eq = static_cast<uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
    if (eq != 0xffffffffu) return n + static_cast<size_t>(__builtin_ctz(~eq));
    n += 32;
  }
  return n + sse2::match_length(a + n, b + n, max - n);
}

namespace {

constexpr uint32_t kAdlerMod = 65521;
constexpr size_t kChunk = 5552 / 32 * 32;

uint32_t hsum_epi32(__m256i v) {
  __m128i x = _mm_add_epi32(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  x = _mm_add_epi32(x, _mm_shuffle_epi32(x, _MM_SHUFFLE(1, 0, 3, 2)));
  x = _mm_add_epi32(x, _mm_shuffle_epi32(x, _MM_SHUFFLE(2, 3, 0, 1)));
  return static_cast<uint32_t>(_mm_cvtsi128_si32(x));
}

}  // namespace

uint32_t adler32(uint32_t adler, const uint8_t* data, size_t size) {
  uint64_t a = adler & 0xffff;
  uint64_t b = adler >> 16;
  const __m256i zero = _mm256_setzero_si256();
  const __m256i ones = _mm256_set1_epi16(1);
  const __m256i weights = _mm256_setr_epi8(32, 31, 30, 29, 28, 27, 26, 25, 24, 23, 22, 21, 20, 19, 18, 17,
                                           16, 15, 14, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1);

  while (size >= 32) {
    const size_t n = (size < kChunk ? size : kChunk) / 32 * 32;
    __m256i v_sum = zero;
    __m256i v_prefix = zero;
    __m256i v_weighted = zero;
    for (size_t off = 0; off < n; off += 32) {
      const __m256i block = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + off));
      v_prefix = _mm256_add_epi32(v_prefix, v_sum);
      v_sum = _mm256_add_epi32(v_sum, _mm256_sad_epu8(block, zero));
      const __m256i pairs = _mm256_maddubs_epi16(block, weights);
      v_weighted = _mm256_add_epi32(v_weighted, _mm256_madd_epi16(pairs, ones));
    }
    b += a * n + 32ull * hsum_epi32(v_prefix) + hsum_epi32(v_weighted);
    a += hsum_epi32(v_sum);
    a %= kAdlerMod;
    b %= kAdlerMod;
    data += n;
    size -= n;
  }
  return sse2::adler32(static_cast<uint32_t>((b << 16) | a), data, size);
}

}  // namespace braid::kernels::avx2
