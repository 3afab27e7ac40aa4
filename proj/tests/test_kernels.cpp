#include <gtest/gtest.h>

#include <random>

#include "braid/checksum.hpp"
#include "braid/kernels.hpp"
#include "braid/match_finder.hpp"
#include "support.hpp"

namespace braid::kernels {
namespace {

struct Variant {
  Isa isa;
  size_t (*match_length)(const uint8_t*, const uint8_t*, size_t);
  uint32_t (*adler32)(uint32_t, const uint8_t*, size_t);
};

std::vector<Variant> variants() {
  std::vector<Variant> v = {{Isa::kScalar, scalar::match_length, scalar::adler32}};
#if defined(__x86_64__) || defined(_M_X64)
  if (isa_supported(Isa::kSse2)) v.push_back({Isa::kSse2, sse2::match_length, sse2::adler32});
  if (isa_supported(Isa::kAvx2)) v.push_back({Isa::kAvx2, avx2::match_length, avx2::adler32});
#endif
  return v;
}

size_t naive_match(const uint8_t* a, const uint8_t* b, size_t max) {
  size_t n = 0;
  while (n < max && a[n] == b[n]) ++n;
  return n;
}

uint32_t naive_adler(const Bytes& d) {
  uint64_t a = 1;
  uint64_t b = 0;
  for (uint8_t x : d) {
    a = (a + x) % 65521;
    b = (b + a) % 65521;
  }
  return static_cast<uint32_t>(b << 16 | a);
}

TEST(Kernels, MatchLengthAgreesAcrossVariants) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5000; ++trial) {
    const size_t n = 1 + rng() % 600;
    Bytes a = braid::testing::random_bytes(rng, n);
    Bytes b = a;
    const size_t diff = rng() % (n + 1);
    if (diff < n) b[diff] ^= static_cast<uint8_t>(1 + rng() % 255);
    const size_t off_a = rng() % (n + 1);
    const size_t max = rng() % (n - off_a + 1);
    const size_t want = naive_match(a.data() + off_a, b.data() + off_a, max);
    for (const Variant& v : variants()) {
      ASSERT_EQ(v.match_length(a.data() + off_a, b.data() + off_a, max), want) << isa_name(v.isa);
    }
  }
}

TEST(Kernels, Adler32AgreesAcrossVariants) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t n = braid::testing::fuzz_size(rng, 200000);
    const Bytes d = trial % 3 == 0 ? Bytes(n, 0xFF) : braid::testing::random_bytes(rng, n);
    const uint32_t want = naive_adler(d);
    const size_t cut = n == 0 ? 0 : rng() % n;
    for (const Variant& v : variants()) {
      ASSERT_EQ(v.adler32(1, d.data(), d.size()), want) << isa_name(v.isa) << " n=" << n;
      ASSERT_EQ(v.adler32(v.adler32(1, d.data(), cut), d.data() + cut, n - cut), want) << isa_name(v.isa);
    }
  }
}

TEST(Kernels, DispatchFollowsActiveIsa) {
  const Isa original = active_isa();
  EXPECT_EQ(original, detected_isa());
  EXPECT_TRUE(isa_supported(Isa::kScalar));
  const Bytes word = braid::testing::bytes_of("Wikipedia");
  for (const Variant& v : variants()) {
    set_active_isa(v.isa);
    EXPECT_EQ(active_isa(), v.isa);
    EXPECT_EQ(braid::adler32(word), 0x11E60398u);
    EXPECT_EQ(match_length(word.data(), word.data(), word.size()), word.size());
  }
  set_active_isa(original);
}

TEST(Kernels, MatchFinderIdenticalUnderEveryIsa) {
  const Isa original = active_isa();
  std::mt19937_64 rng(3);
  const Bytes in = braid::testing::fuzz_input(rng, braid::testing::FuzzKind::kRepetitive, 20000);
  std::vector<Match> reference;
  for (const Variant& v : variants()) {
    set_active_isa(v.isa);
    const MatchFinder f(in);
    std::vector<Match> got;
    for (size_t p = 0; p < in.size(); p += 7) got.push_back(f.find_longest_match(p, 258, TieBreak::kLargestDistance));
    if (reference.empty()) {
      reference = got;
    } else {
      EXPECT_EQ(got, reference) << isa_name(v.isa);
    }
  }
  set_active_isa(original);
}

}  // namespace
}  // namespace braid::kernels
