#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops. Every kernel has a portable scalar reference
// and, on x86-64, SSE2 and AVX2 variants. The active variant is picked once
// from CPUID; tests pin each variant and compare against the scalar one.
namespace braid::kernels {

enum class Isa { kScalar, kSse2, kAvx2 };

[[nodiscard]] std::string_view isa_name(Isa isa);

/// Best variant the running CPU supports.
[[nodiscard]] Isa detected_isa();
/// Variant the dispatching entry points currently use.
[[nodiscard]] Isa active_isa();
/// Forces a variant (clamped to what the CPU supports). Not thread-safe;
/// meant for tests and benchmarks.
void set_active_isa(Isa isa);
[[nodiscard]] bool isa_supported(Isa isa);

/// Length of the common prefix of a[0..max) and b[0..max).
[[nodiscard]] size_t match_length(const uint8_t* a, const uint8_t* b, size_t max);

/// Adler-32 continuation (RFC 1950); start with adler = 1.
[[nodiscard]] uint32_t adler32(uint32_t adler, const uint8_t* data, size_t size);

namespace scalar {
size_t match_length(const uint8_t* a, const uint8_t* b, size_t max);
uint32_t adler32(uint32_t adler, const uint8_t* data, size_t size);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace sse2 {
size_t match_length(const uint8_t* a, const uint8_t* b, size_t max);
uint32_t adler32(uint32_t adler, const uint8_t* data, size_t size);
}  // namespace sse2

namespace avx2 {
size_t match_length(const uint8_t* a, const uint8_t* b, size_t max);
uint32_t adler32(uint32_t adler, const uint8_t* data, size_t size);
}  // namespace avx2
#endif

}  // namespace braid::kernels
