#pragma once

#include <array>
#include <cstddef>

#include "braid/deflate_tables.hpp"
#include "braid/lz_store.hpp"

namespace braid {

/// Symbol frequencies of one token range under the DEFLATE alphabets.
struct SymbolStats {
  std::array<size_t, deflate::kNumLitLenSymbols> litlen{};
  std::array<size_t, deflate::kNumDistSymbols> dist{};

  friend bool operator==(const SymbolStats&, const SymbolStats&) = default;
};

/// Counts literal/length and distance symbols of tokens [from, to), plus one
/// end-of-block symbol.
[[nodiscard]] SymbolStats compute_stats(const TokenStore& store, size_t from, size_t to);
[[nodiscard]] inline SymbolStats compute_stats(const TokenStore& store) {
  return compute_stats(store, 0, store.size());
}

}  // namespace braid
