#include "braid/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "braid/baselines.hpp"
#include "braid/compressor.hpp"
#include "braid/inflate.hpp"

namespace braid::bench {

namespace {

using json = nlohmann::json;

CorpusSpec make_spec(std::string name, std::vector<CorpusMember> members, std::vector<std::string> urls) {
  CorpusSpec s;
  s.name = std::move(name);
  s.members = std::move(members);
  s.source_urls = std::move(urls);
  return s;
}

std::string human_bytes(uint64_t n) {
  if (n % 1000000 == 0) return std::to_string(n / 1000000) + "MB";
  if (n % 1000 == 0) return std::to_string(n / 1000) + "KB";
  return std::to_string(n) + "B";
}

Bytes read_prefix(const std::filesystem::path& p, uint64_t count) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw BenchError("cannot open " + p.string());
  Bytes data(count);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(count));
  if (static_cast<uint64_t>(in.gcount()) != count) throw BenchError("short read from " + p.string());
  return data;
}

BenchRow total_row(const std::vector<BenchRow>& rows, const std::string& corpus, const std::string& codec) {
  BenchRow t;
  t.corpus = corpus;
  t.file = "TOTAL";
  t.codec = codec;
  for (const BenchRow& r : rows) {
    if (r.codec != codec) continue;
    t.lo += r.lo;
    t.lc += r.lc;
    t.wall_ms += r.wall_ms;
    t.preset = r.preset;
    t.link_bytes_per_ms = r.link_bytes_per_ms;
  }
  return t;
}

}  // namespace

double compression_percentage(uint64_t lo, uint64_t lc) {
  if (lo == 0) throw BenchError("compression percentage is undefined for an empty original");
  return (static_cast<double>(lo) - static_cast<double>(lc)) / static_cast<double>(lo) * 100.0;
}

int64_t compression_percentage_hundredths(uint64_t lo, uint64_t lc) {
  if (lo == 0) throw BenchError("compression percentage is undefined for an empty original");
  const __int128 num = (static_cast<__int128>(lo) - static_cast<__int128>(lc)) * 10000;
  const __int128 den = lo;
  const __int128 mag = num < 0 ? -num : num;
  __int128 q = mag / den;
  if ((mag % den) * 2 >= den) ++q;
  return static_cast<int64_t>(num < 0 ? -q : q);
}

std::string format_percentage(uint64_t lo, uint64_t lc) {
  const int64_t h = compression_percentage_hundredths(lo, lc);
  const int64_t a = h < 0 ? -h : h;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", h < 0 ? "-" : "", static_cast<long long>(a / 100),
                static_cast<long long>(a % 100));
  return buf;
}

double transmit_time_ms(uint64_t size, double bytes_per_ms) {
  if (!(bytes_per_ms > 0)) throw BenchError("link speed must be positive");
  return static_cast<double>(size) / bytes_per_ms;
}

std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", ms);
  return buf;
}

LinkSpeed parse_link_speed(std::string_view text) {
  if (text == "paper") return {"paper", kPaperBytesPerMs};
  if (text == "10MBps") return {"10MBps", kTenMBpsBytesPerMs};
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !(v > 0) || !std::isfinite(v)) {
    throw BenchError("link speed must be paper, 10MBps or a positive bytes/ms value: " + s);
  }
  return {s, v};
}

uint64_t CorpusSpec::total_size() const {
  uint64_t t = 0;
  for (const CorpusMember& m : members) t += prefix_limit ? std::min(m.size, *prefix_limit) : m.size;
  return t;
}

std::string CorpusSpec::label() const {
  if (!prefix_limit) return name;
  return name + "[0:" + human_bytes(*prefix_limit) + "]";
}

std::optional<CorpusSpec> builtin_corpus(std::string_view name) {
  if (name == "canterbury") {
    return make_spec("canterbury",
                     {{"alice29.txt", 152089},
                      {"asyoulik.txt", 125179},
                      {"cp.html", 24603},
                      {"fields.c", 11150},
                      {"grammar.lsp", 3721},
                      {"kennedy.xls", 1029744},
                      {"lcet10.txt", 426754},
                      {"plrabn12.txt", 481861},
                      {"ptt5", 513216},
                      {"sum", 38240},
                      {"xargs.1", 4227}},
                     {"https://corpus.canterbury.ac.nz/resources/cantrbry.tar.gz",
                      "https://corpus.canterbury.ac.nz/resources/cantrbry.zip"});
  }
  if (name == "calgary") {
    return make_spec("calgary",
                     {{"bib", 111261},
                      {"book1", 768771},
                      {"book2", 610856},
                      {"geo", 102400},
                      {"news", 377109},
                      {"obj1", 21504},
                      {"obj2", 246814},
                      {"paper1", 53161},
                      {"paper2", 82199},
                      {"pic", 513216},
                      {"progc", 39611},
                      {"progl", 71646},
                      {"progp", 49379},
                      {"trans", 93695}},
                     {"https://corpus.canterbury.ac.nz/resources/calgary.tar.gz"});
  }
  if (name == "enwik8") {
    return make_spec("enwik8", {{"enwik8", 100000000}}, {"http://mattmahoney.net/dc/enwik8.zip"});
  }
  return std::nullopt;
}

std::vector<std::string> builtin_corpus_names() { return {"calgary", "canterbury", "enwik8"}; }

CorpusSpec load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw BenchError("cannot open manifest " + path.string());
  CorpusSpec s;
  try {
    const json j = json::parse(in);
    s.name = j.at("name").get<std::string>();
    if (j.contains("source_urls")) s.source_urls = j.at("source_urls").get<std::vector<std::string>>();
    for (const json& f : j.at("files")) s.members.push_back({f.at("name").get<std::string>(), f.at("size").get<uint64_t>()});
    if (j.contains("prefix_limit")) s.prefix_limit = j.at("prefix_limit").get<uint64_t>();
  } catch (const json::exception& e) {
    throw BenchError("bad manifest " + path.string() + ": " + e.what());
  }
  if (s.members.empty()) throw BenchError("manifest " + path.string() + " lists no files");
  return s;
}

std::string manifest_json(const CorpusSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["source_urls"] = spec.source_urls;
  j["files"] = json::array();
  for (const CorpusMember& m : spec.members) j["files"].push_back({{"name", m.name}, {"size", m.size}});
  if (spec.prefix_limit) j["prefix_limit"] = *spec.prefix_limit;
  j["total_size"] = spec.total_size();
  return j.dump(2);
}

const std::vector<RecordedRow>& recorded_rows() {
  static const std::vector<RecordedRow> rows = {
      {"calgary", 3141622, 1017624, 980674, 978993, 974067},
      {"canterbury", 2818976, 730732, 675163, 674321, 668456},
      {"enwik8", 100000000, 36445248, 35102976, 35025767, 34986660},
  };
  return rows;
}

const RecordedRow* recorded_row(std::string_view corpus) {
  for (const RecordedRow& r : recorded_rows()) {
    if (r.corpus == corpus) return &r;
  }
  return nullptr;
}

const std::vector<RecordedTimes>& recorded_times() {
  static const std::vector<RecordedTimes> rows = {
      {"calgary", 99.4, 95.8, 95.6, 95.2},
      {"canterbury", 71.4, 65.9, 65.9, 65.3},
      {"enwik8", 3559.1, 3428.0, 3420.5, 3417.6},
  };
  return rows;
}

std::string_view codec_name(Codec c) {
  switch (c) {
    case Codec::kLz77:
      return "lz77";
    case Codec::kLzss:
      return "lzss";
    case Codec::kGreedy:
      return "braid-greedy";
    case Codec::kOptimal:
      return "braid-optimal";
  }
  return "?";
}

std::optional<Codec> parse_codec(std::string_view name) {
  if (name == "lz77") return Codec::kLz77;
  if (name == "lzss") return Codec::kLzss;
  if (name == "braid-greedy" || name == "geflochtener-greedy" || name == "greedy") return Codec::kGreedy;
  if (name == "braid-optimal" || name == "geflochtener-optimal" || name == "optimal") return Codec::kOptimal;
  return std::nullopt;
}

std::vector<Codec> parse_codec_list(std::string_view list) {
  std::vector<Codec> out;
  size_t at = 0;
  while (at <= list.size()) {
    const size_t comma = std::min(list.find(',', at), list.size());
    const std::string_view item = list.substr(at, comma - at);
    if (!item.empty()) {
      const auto c = parse_codec(item);
      if (!c) throw BenchError("unknown codec: " + std::string(item));
      out.push_back(*c);
    }
    at = comma + 1;
  }
  return out;
}

std::string BenchRow::cp() const { return lo == 0 ? "" : format_percentage(lo, lc); }

std::string BenchRow::transmit_ms() const { return format_ms(transmit_time_ms(lc, link_bytes_per_ms)); }

Bytes run_codec(Codec codec, ByteView data, const RunOptions& options) {
  Bytes out;
  Bytes back;
  switch (codec) {
    case Codec::kLz77:
      out = baselines::lz77_compress(data);
      if (options.verify) back = baselines::lz77_decompress(out);
      break;
    case Codec::kLzss:
      out = baselines::lzss_compress(data);
      if (options.verify) back = baselines::lzss_decompress(out);
      break;
    case Codec::kGreedy:
    case Codec::kOptimal: {
      CompressConfig config;
      config.mode = codec == Codec::kGreedy ? CompressMode::kGreedy : CompressMode::kOptimal;
      config.iterations = options.iterations;
      out = compress(data, config).output;
      if (options.verify) back = gunzip(out).output;
      break;
    }
  }
  if (options.verify && !std::equal(back.begin(), back.end(), data.begin(), data.end())) {
    throw BenchError(std::string(codec_name(codec)) + " round trip mismatch");
  }
  return out;
}

Report run_corpus(const CorpusSpec& spec, const std::filesystem::path& dir, const RunOptions& options) {
  Report report;
  const std::string corpus = spec.label();

  struct Job {
    size_t member;
    Codec codec;
  };
  std::vector<Job> jobs;
  std::vector<bool> present(spec.members.size(), false);
  for (size_t m = 0; m < spec.members.size(); ++m) {
    const CorpusMember& member = spec.members[m];
    const std::filesystem::path p = dir / member.name;
    std::error_code ec;
    const auto size = std::filesystem::file_size(p, ec);
    if (ec) {
      report.errors.push_back(member.name + ": missing (" + p.string() + ")");
      continue;
    }
    if (size != member.size) {
      report.errors.push_back(member.name + ": size " + std::to_string(size) + ", manifest says " +
                              std::to_string(member.size));
      continue;
    }
    present[m] = true;
    for (Codec c : options.codecs) jobs.push_back({m, c});
  }

  std::vector<std::optional<BenchRow>> results(jobs.size());
  std::vector<std::string> job_errors(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t j = next++; j < jobs.size(); j = next++) {
      const CorpusMember& member = spec.members[jobs[j].member];
      try {
        const uint64_t lo = spec.prefix_limit ? std::min(member.size, *spec.prefix_limit) : member.size;
        const Bytes data = read_prefix(dir / member.name, lo);
        const auto t0 = std::chrono::steady_clock::now();
        const Bytes out = run_codec(jobs[j].codec, data, options);
        const auto t1 = std::chrono::steady_clock::now();
        BenchRow row;
        row.corpus = corpus;
        row.file = member.name;
        row.codec = std::string(codec_name(jobs[j].codec));
        row.lo = lo;
        row.lc = out.size();
        row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        row.preset = options.preset;
        row.link_bytes_per_ms = options.link.bytes_per_ms;
        results[j] = row;
      } catch (const std::exception& e) {
        job_errors[j] = member.name + " (" + std::string(codec_name(jobs[j].codec)) + "): " + e.what();
      }
    }
  };
  const size_t threads = std::clamp<size_t>(static_cast<size_t>(std::max(options.jobs, 1)), 1, std::max<size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (size_t j = 0; j < jobs.size(); ++j) {
    if (results[j]) report.rows.push_back(*results[j]);
    if (!job_errors[j].empty()) report.errors.push_back(job_errors[j]);
  }
  for (Codec c : options.codecs) {
    const std::string name(codec_name(c));
    if (std::any_of(report.rows.begin(), report.rows.end(), [&](const BenchRow& r) { return r.codec == name; })) {
      report.totals.push_back(total_row(report.rows, corpus, name));
    }
  }
  return report;
}

void write_csv(const Report& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  auto line = [&out](const BenchRow& r) {
    const std::string cp = r.cp();
    out << r.corpus << ',' << r.file << ',' << r.codec << ',' << r.lo << ',' << r.lc << ',' << cp << ','
        << r.transmit_ms() << ',' << format_ms(r.wall_ms) << ',' << cp << ',' << r.preset << '\n';
  };
  for (const BenchRow& r : report.rows) line(r);
  for (const BenchRow& r : report.totals) line(r);
}

void write_summary(const Report& report, std::ostream& out) {
  out << std::left << std::setw(22) << "corpus" << std::setw(16) << "codec" << std::right << std::setw(12) << "LO"
      << std::setw(12) << "LC" << std::setw(9) << "CP%" << std::setw(13) << "transmit_ms" << std::setw(12)
      << "wall_ms" << '\n';
  for (const BenchRow& t : report.totals) {
    out << std::left << std::setw(22) << t.corpus << std::setw(16) << t.codec << std::right << std::setw(12) << t.lo
        << std::setw(12) << t.lc << std::setw(9) << t.cp() << std::setw(13) << t.transmit_ms() << std::setw(12)
        << format_ms(t.wall_ms) << '\n';
  }
  if (report.totals.empty()) return;
  const std::string& corpus = report.totals.front().corpus;
  const RecordedRow* rec = recorded_row(corpus);
  if (rec == nullptr) return;
  out << "recorded totals for " << corpus << " (LO " << rec->original << "):";
  out << " gzip-9 " << rec->gzip9 << " (" << format_percentage(rec->original, rec->gzip9) << "%)";
  out << ", 7zip " << rec->sevenzip << ", kzip " << rec->kzip;
  out << ", reference " << rec->reference << " (" << format_percentage(rec->original, rec->reference) << "%)\n";
  for (const BenchRow& t : report.totals) {
    if (t.lo != rec->original) {
      out << "note: " << t.codec << " covered " << t.lo << " of " << rec->original << " bytes\n";
      continue;
    }
    const double vs_gzip = 100.0 * (static_cast<double>(rec->gzip9) - static_cast<double>(t.lc)) /
                           static_cast<double>(rec->gzip9);
    out << t.codec << ": " << std::fixed << std::setprecision(2) << vs_gzip << "% smaller than recorded gzip-9\n"
        << std::defaultfloat;
  }
}

}  // namespace braid::bench
