#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace braid {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

/// One LZ77 token. A literal keeps its byte in `litlen` with `dist == 0`;
/// a backward reference keeps its length (3..258) in `litlen` and its
/// distance (1..32768) in `dist`.
struct Token {
  uint16_t litlen = 0;
  uint16_t dist = 0;

  [[nodiscard]] bool is_literal() const { return dist == 0; }
  /// Number of input bytes the token covers.
  [[nodiscard]] size_t span() const { return dist == 0 ? 1 : litlen; }

  friend bool operator==(const Token&, const Token&) = default;
};

/// Thrown when a token or store violates its structural contract.
class StoreError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered token sequence plus the input offset of every token.
///
/// A store covers the input slice [start(), end()). Match tokens may refer
/// back past start() into earlier input (a previous block or chunk), but
/// never before offset 0 of the whole input.
class TokenStore {
 public:
  TokenStore() = default;
  explicit TokenStore(size_t start) : start_(start), end_(start) {}

  /// Appends a literal when `dist == 0` (`symbol` is stored, `length` is
  /// ignored) or a backward reference otherwise. Throws StoreError on an
  /// out-of-range length or distance, or a distance reaching before offset 0.
  void append_lit_len_dist(int length, int dist, uint8_t symbol);
  void append_literal(uint8_t symbol) { append_lit_len_dist(0, 0, symbol); }
  void append_match(int length, int dist) { append_lit_len_dist(length, dist, 0); }

  /// Appends every token of `other`, which must start where this store ends.
  void append_store(const TokenStore& other);

  [[nodiscard]] const std::vector<Token>& tokens() const { return tokens_; }
  [[nodiscard]] const std::vector<size_t>& positions() const { return positions_; }
  [[nodiscard]] size_t size() const { return tokens_.size(); }
  [[nodiscard]] bool empty() const { return tokens_.empty(); }
  [[nodiscard]] const Token& operator[](size_t i) const { return tokens_[i]; }

  [[nodiscard]] size_t start() const { return start_; }
  [[nodiscard]] size_t end() const { return end_; }
  /// Input offset where token `i` begins; `i == size()` gives end().
  [[nodiscard]] size_t position_of(size_t i) const { return i < positions_.size() ? positions_[i] : end_; }

  void clear();

  friend bool operator==(const TokenStore&, const TokenStore&) = default;

 private:
  size_t start_ = 0;
  size_t end_ = 0;
  std::vector<Token> tokens_;
  std::vector<size_t> positions_;
};

/// Decodes a store back to the bytes it covers. `history` holds the bytes
/// immediately preceding store.start() so references into earlier input
/// resolve; it is not part of the result. Overlapping copies
/// (dist < length) extend byte by byte. Throws StoreError when a
/// reference reaches before the available history.
[[nodiscard]] Bytes expand(const TokenStore& store, ByteView history = {});

}  // namespace braid
