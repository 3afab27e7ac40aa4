#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "braid/bench.hpp"
#include "braid/lz_store.hpp"
#include "braid/match_finder.hpp"
#include "braid/parsers.hpp"

namespace braid::testing {

inline Bytes bytes_of(std::string_view s) { return Bytes(s.begin(), s.end()); }

inline Bytes read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

inline std::filesystem::path data_dir() { return BRAID_TEST_DATA; }

/// Directory holding a corpus: $BRAID_CORPUS_DIR/<name> when set, else
/// tests/data/<name>.
inline std::filesystem::path corpus_dir(const std::string& name) {
  if (const char* env = std::getenv("BRAID_CORPUS_DIR"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env) / name;
  }
  return data_dir() / name;
}

struct CorpusFile {
  std::string name;
  Bytes data;
};

/// Members of a built-in corpus that exist with the manifest size.
inline std::vector<CorpusFile> present_members(const std::string& corpus, std::vector<std::string>* missing = nullptr) {
  std::vector<CorpusFile> out;
  const auto spec = bench::builtin_corpus(corpus);
  for (const bench::CorpusMember& m : spec->members) {
    const auto p = corpus_dir(corpus) / m.name;
    std::error_code ec;
    if (std::filesystem::file_size(p, ec) == m.size && !ec) {
      out.push_back({m.name, read_file(p)});
    } else if (missing != nullptr) {
      missing->push_back(m.name);
    }
  }
  return out;
}

inline Bytes random_bytes(std::mt19937_64& rng, size_t n, int alphabet = 256, uint8_t base = 0) {
  std::uniform_int_distribution<int> d(0, alphabet - 1);
  Bytes out(n);
  for (uint8_t& b : out) b = static_cast<uint8_t>(base + d(rng));
  return out;
}

enum class FuzzKind { kRandom, kRepetitive, kZeros, kBinary, kText };
inline constexpr FuzzKind kFuzzKinds[] = {FuzzKind::kRandom, FuzzKind::kRepetitive, FuzzKind::kZeros,
                                          FuzzKind::kBinary, FuzzKind::kText};

/// Structured fuzz input of exactly `n` bytes.
inline Bytes fuzz_input(std::mt19937_64& rng, FuzzKind kind, size_t n) {
  switch (kind) {
    case FuzzKind::kRandom:
      return random_bytes(rng, n);
    case FuzzKind::kZeros:
      return Bytes(n, 0);
    case FuzzKind::kBinary:
      return random_bytes(rng, n, 2, 'A');
    case FuzzKind::kRepetitive: {
      std::uniform_int_distribution<size_t> period(1, 300);
      const Bytes unit = random_bytes(rng, period(rng), 8);
      Bytes out(n);
      std::bernoulli_distribution noise(0.01);
      for (size_t i = 0; i < n; ++i) out[i] = noise(rng) ? static_cast<uint8_t>(rng()) : unit[i % unit.size()];
      return out;
    }
    case FuzzKind::kText: {
      static const char* words[] = {"the ", "quick ", "brown ", "fox ", "jumps ", "over ", "lazy ", "dog. ",
                                    "and ", "then ", "some ", "more\n", "data ", "with ", "words "};
      std::uniform_int_distribution<size_t> pick(0, std::size(words) - 1);
      Bytes out;
      while (out.size() < n) {
        const std::string_view w = words[pick(rng)];
        out.insert(out.end(), w.begin(), w.end());
      }
      out.resize(n);
      return out;
    }
  }
  return {};
}

/// Log-uniform size in [0, max].
inline size_t fuzz_size(std::mt19937_64& rng, size_t max) {
  std::uniform_real_distribution<double> u(0.0, std::log(static_cast<double>(max) + 1.0));
  return std::min(max, static_cast<size_t>(std::exp(u(rng))) - 1);
}

/// Longest match at `pos` by scanning every earlier window position.
/// Ties go to the largest or smallest distance.
inline Match brute_longest_match(ByteView in, size_t pos, int limit, TieBreak tie) {
  limit = std::min<int>({limit, deflate::kMaxMatch, static_cast<int>(in.size() - pos)});
  Match best;
  if (limit < deflate::kMinMatch) return {};
  const size_t window = std::min<size_t>(pos, deflate::kWindowSize);
  for (size_t d = 1; d <= window; ++d) {
    int l = 0;
    while (l < limit && in[pos + static_cast<size_t>(l)] == in[pos - d + static_cast<size_t>(l)]) ++l;
    if (l > best.length || (l == best.length && l > 0 && tie == TieBreak::kLargestDistance)) {
      best = {l, static_cast<int>(d)};
    }
  }
  if (best.length < deflate::kMinMatch) return {};
  return best;
}

/// Minimum modelled cost over every parse of `in`, enumerating all
/// (length, distance) pairs, or only the smallest distance per length
/// when `smallest_only`. Memoised from the end of the input.
inline double exhaustive_min_cost(ByteView in, const SymbolCostModel& model, bool smallest_only = false) {
  const size_t n = in.size();
  std::vector<double> best(n + 1, std::numeric_limits<double>::infinity());
  best[n] = 0.0;
  for (size_t i = n; i-- > 0;) {
    double b = model.literal_cost(in[i]) + best[i + 1];
    const size_t max_l = std::min<size_t>(deflate::kMaxMatch, n - i);
    for (size_t l = deflate::kMinMatch; l <= max_l; ++l) {
      for (size_t d = 1; d <= std::min<size_t>(i, deflate::kWindowSize); ++d) {
        if (!verify_len_dist(in, i, static_cast<int>(l), static_cast<int>(d))) continue;
        b = std::min(b, model.match_cost(static_cast<int>(l), static_cast<int>(d)) + best[i + l]);
        if (smallest_only) break;
      }
    }
    best[i] = b;
  }
  return best[0];
}

}  // namespace braid::testing
