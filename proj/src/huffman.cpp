#include "braid/huffman.hpp"

#include <algorithm>
#include <string>

namespace braid {

size_t HuffmanCode::used_symbols() const {
  return static_cast<size_t>(std::count_if(lengths.begin(), lengths.end(), [](uint8_t l) { return l != 0; }));
}

namespace {

struct Node {
  uint64_t weight;
  int32_t leaf;   // symbol, or -1 for a package
  int32_t child;  // packages: index of the first of two items one level down
};

void count_lengths(const std::vector<std::vector<Node>>& levels, size_t level, size_t index,
                   std::vector<uint8_t>& lengths) {
  const Node& node = levels[level][index];
  if (node.leaf >= 0) {
    ++lengths[static_cast<size_t>(node.leaf)];
    return;
  }
  count_lengths(levels, level - 1, static_cast<size_t>(node.child), lengths);
  count_lengths(levels, level - 1, static_cast<size_t>(node.child) + 1, lengths);
}

}  // namespace

std::vector<uint8_t> length_limited_code_lengths(std::span<const size_t> freqs, int max_bits) {
  std::vector<uint8_t> lengths(freqs.size(), 0);
  std::vector<Node> leaves;
  for (size_t s = 0; s < freqs.size(); ++s) {
    if (freqs[s] != 0) leaves.push_back(Node{freqs[s], static_cast<int32_t>(s), -1});
  }
  if (leaves.empty()) throw HuffmanError("cannot build a Huffman code with no used symbols");
  if (max_bits < 1 || max_bits > 30 || leaves.size() > (size_t{1} << max_bits)) {
    throw HuffmanError(std::to_string(leaves.size()) + " symbols do not fit in " + std::to_string(max_bits) +
                       "-bit codes");
  }
  if (leaves.size() == 1) {
    lengths[static_cast<size_t>(leaves[0].leaf)] = 1;
    return lengths;
  }
  std::stable_sort(leaves.begin(), leaves.end(), [](const Node& a, const Node& b) { return a.weight < b.weight; });

  // Package-merge: level j holds the leaves merged with packages of
  // adjacent pairs from level j - 1, in weight order (leaves first on ties).
  const size_t keep = 2 * leaves.size() - 2;
  std::vector<std::vector<Node>> levels;
  levels.push_back(leaves);
  for (int j = 1; j < max_bits; ++j) {
    const std::vector<Node>& below = levels.back();
    std::vector<Node> packages;
    for (size_t k = 0; k + 1 < below.size(); k += 2) {
      packages.push_back(Node{below[k].weight + below[k + 1].weight, -1, static_cast<int32_t>(k)});
    }
    std::vector<Node> merged;
    merged.reserve(std::min(keep, leaves.size() + packages.size()));
    size_t a = 0;
    size_t b = 0;
    while (merged.size() < keep && (a < leaves.size() || b < packages.size())) {
      if (b >= packages.size() || (a < leaves.size() && leaves[a].weight <= packages[b].weight)) {
        merged.push_back(leaves[a++]);
      } else {
        merged.push_back(packages[b++]);
      }
    }
    levels.push_back(std::move(merged));
  }
  const size_t top = levels.size() - 1;
  for (size_t i = 0; i < keep; ++i) count_lengths(levels, top, i, lengths);
  return lengths;
}

std::vector<uint16_t> canonical_codes(std::span<const uint8_t> lengths) {
  int max_len = 0;
  for (uint8_t l : lengths) max_len = std::max<int>(max_len, l);
  std::vector<uint32_t> bl_count(static_cast<size_t>(max_len) + 1, 0);
  for (uint8_t l : lengths) {
    if (l != 0) ++bl_count[l];
  }
  std::vector<uint32_t> next_code(static_cast<size_t>(max_len) + 2, 0);
  uint32_t code = 0;
  for (int bits = 1; bits <= max_len; ++bits) {
    code = (code + bl_count[static_cast<size_t>(bits) - 1]) << 1;
    next_code[static_cast<size_t>(bits)] = code;
  }
  std::vector<uint16_t> codes(lengths.size(), 0);
  for (size_t s = 0; s < lengths.size(); ++s) {
    if (lengths[s] != 0) codes[s] = static_cast<uint16_t>(next_code[lengths[s]]++);
  }
  return codes;
}

HuffmanCode build_length_limited_huffman(std::span<const size_t> freqs, int max_bits) {
  HuffmanCode code;
  code.lengths = length_limited_code_lengths(freqs, max_bits);
  code.codes = canonical_codes(code.lengths);
  return code;
}

uint64_t kraft_sum_scaled(std::span<const uint8_t> lengths, int max_bits) {
  uint64_t sum = 0;
  for (uint8_t l : lengths) {
    if (l != 0 && l <= max_bits) sum += uint64_t{1} << (max_bits - l);
  }
  return sum;
}

}  // namespace braid
