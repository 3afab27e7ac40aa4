#include "braid/symbol_stats.hpp"

namespace braid {

SymbolStats compute_stats(const TokenStore& store, size_t from, size_t to) {
  SymbolStats stats;
  const auto& tokens = store.tokens();
  for (size_t i = from; i < to; ++i) {
    const Token t = tokens[i];
    if (t.is_literal()) {
      ++stats.litlen[t.litlen];
    } else {
      ++stats.litlen[static_cast<size_t>(deflate::length_symbol(t.litlen))];
      ++stats.dist[static_cast<size_t>(deflate::distance_symbol(t.dist))];
    }
  }
  stats.litlen[deflate::kEndOfBlock] = 1;
  return stats;
}

}  // namespace braid
