#include <atomic>

#include "braid/kernels.hpp"

namespace braid::kernels {

namespace {

Isa probe() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::kAvx2;
  return Isa::kSse2;  // baseline on x86-64
#else
  return Isa::kScalar;
#endif
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kSse2: return "sse2";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

bool isa_supported(Isa isa) { return static_cast<int>(isa) <= static_cast<int>(detected_isa()); }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  active().store(isa_supported(isa) ? isa : detected_isa(), std::memory_order_relaxed);
}

size_t match_length(const uint8_t* a, const uint8_t* b, size_t max) {
  switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::kAvx2: return avx2::match_length(a, b, max);
    case Isa::kSse2: return sse2::match_length(a, b, max);
#endif
    default: return scalar::match_length(a, b, max);
  }
}

uint32_t adler32(uint32_t adler, const uint8_t* data, size_t size) {
  switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::kAvx2: return avx2::adler32(adler, data, size);
    case Isa::kSse2: return sse2::adler32(adler, data, size);
#endif
    default: return scalar::adler32(adler, data, size);
  }
}

}  // namespace braid::kernels
