#include "braid/lz_store.hpp"

#include <string>

#include "braid/deflate_tables.hpp"

namespace braid {

void TokenStore::append_lit_len_dist(int length, int dist, uint8_t symbol) {
  if (dist == 0) {
    tokens_.push_back(Token{symbol, 0});
    positions_.push_back(end_);
    end_ += 1;
    return;
  }
  if (dist < 1 || dist > deflate::kWindowSize) {
    throw StoreError("distance " + std::to_string(dist) + " outside [1, 32768]");
  }
  if (length < deflate::kMinMatch || length > deflate::kMaxMatch) {
    throw StoreError("match length " + std::to_string(length) + " outside [3, 258]");
  }
  if (static_cast<size_t>(dist) > end_) {
    throw StoreError("distance " + std::to_string(dist) + " reaches before input offset 0 at position " +
                     std::to_string(end_));
  }
  tokens_.push_back(Token{static_cast<uint16_t>(length), static_cast<uint16_t>(dist)});
  positions_.push_back(end_);
  end_ += static_cast<size_t>(length);
}

void TokenStore::append_store(const TokenStore& other) {
  if (other.start() != end_) throw StoreError("appended store is not contiguous");
  tokens_.insert(tokens_.end(), other.tokens_.begin(), other.tokens_.end());
  positions_.insert(positions_.end(), other.positions_.begin(), other.positions_.end());
  end_ = other.end_;
}

void TokenStore::clear() {
  tokens_.clear();
  positions_.clear();
  end_ = start_;
}

Bytes expand(const TokenStore& store, ByteView history) {
  Bytes out(history.begin(), history.end());
  out.reserve(history.size() + (store.end() - store.start()));
  for (const Token& t : store.tokens()) {
    if (t.is_literal()) {
      out.push_back(static_cast<uint8_t>(t.litlen));
      continue;
    }
    if (t.dist > out.size()) {
      throw StoreError("corrupt store: distance " + std::to_string(t.dist) + " reaches before output start");
    }
    size_t from = out.size() - t.dist;
    for (int k = 0; k < t.litlen; ++k) {
      const uint8_t b = out[from + k];
      out.push_back(b);
    }
  }
  return Bytes(out.begin() + static_cast<std::ptrdiff_t>(history.size()), out.end());
}

}  // namespace braid
