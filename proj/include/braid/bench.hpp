#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "braid/lz_store.hpp"

namespace braid::bench {

class BenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (LO - LC) / LO * 100. Throws BenchError when LO is 0.
[[nodiscard]] double compression_percentage(uint64_t lo, uint64_t lc);
/// The same value rounded half away from zero to hundredths with exact
/// integer arithmetic.
[[nodiscard]] int64_t compression_percentage_hundredths(uint64_t lo, uint64_t lc);
/// "68.99" style rendering of compression_percentage_hundredths.
[[nodiscard]] std::string format_percentage(uint64_t lo, uint64_t lc);
/// 100 minus the compressed-size ratio in percent, i.e. CP itself.
[[nodiscard]] inline double redundancy_rate(double cp) { return cp; }

[[nodiscard]] double transmit_time_ms(uint64_t size, double bytes_per_ms);
/// One decimal, as a string.
[[nodiscard]] std::string format_ms(double ms);

struct LinkSpeed {
  std::string label;
  double bytes_per_ms = 0;
};
inline constexpr double kPaperBytesPerMs = 10236.0;
inline constexpr double kTenMBpsBytesPerMs = 10000.0;
/// "paper", "10MBps" or a positive number of bytes per millisecond.
[[nodiscard]] LinkSpeed parse_link_speed(std::string_view text);

struct CorpusMember {
  std::string name;
  uint64_t size = 0;
};

struct CorpusSpec {
  std::string name;
  std::vector<CorpusMember> members;
  std::vector<std::string> source_urls;
  std::optional<uint64_t> prefix_limit;

  [[nodiscard]] uint64_t total_size() const;
  /// Name used in reports, e.g. "enwik8[0:10MB]" with a prefix limit.
  [[nodiscard]] std::string label() const;
};

/// Built-in manifests: "calgary", "canterbury", "enwik8".
[[nodiscard]] std::optional<CorpusSpec> builtin_corpus(std::string_view name);
[[nodiscard]] std::vector<std::string> builtin_corpus_names();
/// JSON manifest: {"name", "source_urls": [...], "files": [{"name", "size"}]}.
[[nodiscard]] CorpusSpec load_manifest(const std::filesystem::path& path);
[[nodiscard]] std::string manifest_json(const CorpusSpec& spec);

/// Recorded compressed totals of reference compressors for one corpus.
struct RecordedRow {
  std::string corpus;
  uint64_t original = 0;
  uint64_t gzip9 = 0;
  uint64_t sevenzip = 0;
  uint64_t kzip = 0;
  uint64_t reference = 0;  // the iterated optimal parser's published total
};
[[nodiscard]] const std::vector<RecordedRow>& recorded_rows();
[[nodiscard]] const RecordedRow* recorded_row(std::string_view corpus);

/// Recorded transmit times (ms) per corpus: gzip-9, 7zip, kzip, reference.
struct RecordedTimes {
  std::string corpus;
  double gzip9, sevenzip, kzip, reference;
};
[[nodiscard]] const std::vector<RecordedTimes>& recorded_times();

enum class Codec { kLz77, kLzss, kGreedy, kOptimal };
[[nodiscard]] std::string_view codec_name(Codec c);
[[nodiscard]] std::optional<Codec> parse_codec(std::string_view name);
/// Comma separated list; throws BenchError on an unknown name.
[[nodiscard]] std::vector<Codec> parse_codec_list(std::string_view list);

struct RunOptions {
  std::vector<Codec> codecs{Codec::kOptimal};
  LinkSpeed link{"paper", kPaperBytesPerMs};
  int jobs = 1;
  int iterations = 100;
  std::string preset = "default";
  bool verify = true;  // decode every output and compare
};

struct BenchRow {
  std::string corpus;
  std::string file;
  std::string codec;
  uint64_t lo = 0;
  uint64_t lc = 0;
  double wall_ms = 0;
  std::string preset;
  double link_bytes_per_ms = 0;

  [[nodiscard]] std::string cp() const;
  [[nodiscard]] std::string transmit_ms() const;
};

struct Report {
  std::vector<BenchRow> rows;    // per file and codec, in (file, codec) order
  std::vector<BenchRow> totals;  // per codec, file "TOTAL"
  std::vector<std::string> errors;
  [[nodiscard]] bool ok() const { return errors.empty(); }
};

/// Compressed size of `data` under `codec`. With `verify`, also decodes
/// and throws BenchError on a mismatch.
[[nodiscard]] Bytes run_codec(Codec codec, ByteView data, const RunOptions& options);

/// Compresses every member found under `dir` with every codec. Missing or
/// wrong-sized members are reported in `errors` and skipped.
[[nodiscard]] Report run_corpus(const CorpusSpec& spec, const std::filesystem::path& dir, const RunOptions& options);

inline constexpr std::string_view kCsvHeader =
    "corpus,file,codec,LO,LC,CP,transmit_ms,wall_ms,redundancy_pct,preset";
void write_csv(const Report& report, std::ostream& out);
/// Totals table, with the recorded reference totals when the corpus has
/// them.
void write_summary(const Report& report, std::ostream& out);

}  // namespace braid::bench
