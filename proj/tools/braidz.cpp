// braidz: gzip-compatible compressor with an iterated optimal parser.
//
//   braidz compress [--mode greedy|optimal] [--format gzip|zlib|raw] -o OUT IN
//   braidz decompress [--format auto|gzip|zlib|raw] -o OUT IN
//   braidz bench --corpus NAME|--manifest PATH [--codec LIST] --csv OUT
//   braidz manifest NAME
//
// Exit status: 0 ok, 1 usage, 2 I/O error, 3 corrupt stream, 4 corpus error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "braid/bench.hpp"
#include "braid/compressor.hpp"
#include "braid/inflate.hpp"
#include "braid/kernels.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitCorrupt = 3;
constexpr int kExitCorpus = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

braid::Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  braid::Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path);
  return data;
}

void write_file(const std::string& path, braid::ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("error writing " + path);
}

struct CompressArgs {
  std::string mode = "optimal";
  std::string format = "gzip";
  int iterations = 100;
  int max_blocks = 100;
  std::string tie = "largest-distance";
  std::string score = "identity";
  bool fast = false;
  bool reparse = false;
  std::string out;
  std::string in;
};

int run_compress(const CompressArgs& a) {
  braid::CompressConfig c;
  c.mode = *braid::parse_mode(a.mode);
  c.format = *braid::parse_format(a.format);
  c.iterations = a.fast ? 15 : a.iterations;
  c.max_blocks = a.max_blocks;
  c.tie_break = *braid::parse_tie_break(a.tie);
  c.score = *braid::parse_score_policy(a.score);
  c.reparse_blocks = a.reparse;
  const braid::Bytes input = read_file(a.in);
  const braid::CompressResult r = braid::compress(input, c);
  write_file(a.out, r.output);
  const std::string cp =
      input.empty() ? "undefined (LO=0)" : braid::bench::format_percentage(input.size(), r.output.size()) + "%";
  std::printf("LO=%zu LC=%zu CP=%s blocks=%zu iterations=%d mode=%s format=%s\n", input.size(), r.output.size(),
              cp.c_str(), r.blocks.size(), r.iterations_run, a.mode.c_str(), a.format.c_str());
  return kExitOk;
}

int run_decompress(const std::string& format, const std::string& in, const std::string& out) {
  const braid::Bytes data = read_file(in);
  braid::InflateResult r;
  try {
    r = format == "auto" ? braid::decompress_auto(data) : braid::decompress(data, *braid::parse_format(format));
  } catch (const braid::InflateError& e) {
    std::fprintf(stderr, "braidz: %s: %s\n", in.c_str(), e.what());
    return kExitCorrupt;
  }
  write_file(out, r.output);
  return kExitOk;
}

struct BenchArgs {
  std::string corpus;
  std::string manifest;
  std::string corpus_dir;
  std::string codecs = "braid-optimal";
  std::string link = "paper";
  uint64_t prefix = 0;
  int jobs = 1;
  int iterations = 100;
  bool fast = false;
  std::string csv;
};

int run_bench(const BenchArgs& a) {
  namespace bench = braid::bench;
  bench::CorpusSpec spec;
  bench::RunOptions opts;
  try {
    if (!a.manifest.empty()) {
      spec = bench::load_manifest(a.manifest);
    } else {
      const auto b = bench::builtin_corpus(a.corpus);
      if (!b) throw bench::BenchError("unknown corpus " + a.corpus);
      spec = *b;
    }
    opts.codecs = bench::parse_codec_list(a.codecs);
    opts.link = bench::parse_link_speed(a.link);
  } catch (const bench::BenchError& e) {
    std::fprintf(stderr, "braidz: %s\n", e.what());
    return kExitCorpus;
  }
  if (a.prefix > 0) spec.prefix_limit = a.prefix;
  opts.jobs = a.jobs;
  opts.iterations = a.fast ? 15 : a.iterations;
  opts.preset = a.fast ? "fast" : "default";
  const std::filesystem::path dir = a.corpus_dir.empty() ? std::filesystem::path("corpus") / spec.name
                                                                  : std::filesystem::path(a.corpus_dir);

  const bench::Report report = bench::run_corpus(spec, dir, opts);
  std::ofstream csv(a.csv);
  if (!csv) throw IoError("cannot write " + a.csv);
  bench::write_csv(report, csv);
  bench::write_summary(report, std::cout);
  for (const std::string& e : report.errors) std::fprintf(stderr, "braidz: %s\n", e.c_str());
  return report.ok() ? kExitOk : kExitCorpus;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"braidz: gzip-compatible compressor with an iterated optimal parser"};
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "Kernel set to use")->check(CLI::IsMember({"scalar", "sse2", "avx2"}));

  CompressArgs ca;
  auto* compress = app.add_subcommand("compress", "Compress a file");
  compress->add_option("--mode", ca.mode)->check(CLI::IsMember({"greedy", "optimal"}));
  compress->add_option("--format", ca.format)->check(CLI::IsMember({"gzip", "zlib", "raw"}));
  compress->add_option("--iterations", ca.iterations)->check(CLI::PositiveNumber);
  compress->add_option("--max-blocks", ca.max_blocks)->check(CLI::Range(1, 100));
  compress->add_option("--tie-break", ca.tie)->check(CLI::IsMember({"largest-distance", "smallest-distance"}));
  compress->add_option("--score", ca.score)->check(CLI::IsMember({"identity", "distance-penalty"}));
  compress->add_flag("--fast", ca.fast, "15 iterations");
  compress->add_flag("--reparse-blocks", ca.reparse, "Split first, then parse each block");
  compress->add_option("-o,--output", ca.out)->required();
  compress->add_option("input", ca.in)->required();

  std::string d_format = "auto";
  std::string d_out;
  std::string d_in;
  auto* decompress = app.add_subcommand("decompress", "Decompress a gzip, zlib or raw stream");
  decompress->add_option("--format", d_format)->check(CLI::IsMember({"auto", "gzip", "zlib", "raw"}));
  decompress->add_option("-o,--output", d_out)->required();
  decompress->add_option("input", d_in)->required();

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Benchmark codecs over a corpus");
  auto* corpus_opt = bench->add_option("--corpus", ba.corpus);
  auto* manifest_opt = bench->add_option("--manifest", ba.manifest);
  corpus_opt->excludes(manifest_opt);
  bench->add_option("--corpus-dir", ba.corpus_dir, "Directory holding the corpus files");
  bench->add_option("--codec", ba.codecs, "Comma separated: lz77,lzss,braid-greedy,braid-optimal");
  bench->add_option("--link-speed", ba.link, "paper, 10MBps or bytes per ms");
  bench->add_option("--prefix", ba.prefix, "Only the first BYTES of each file");
  bench->add_option("--jobs", ba.jobs)->check(CLI::PositiveNumber);
  bench->add_option("--iterations", ba.iterations)->check(CLI::PositiveNumber);
  bench->add_flag("--fast", ba.fast, "15 iterations");
  bench->add_option("--csv", ba.csv)->required();

  std::string m_name;
  auto* manifest = app.add_subcommand("manifest", "Print a built-in corpus manifest as JSON");
  manifest->add_option("name", m_name)->required()->check(CLI::IsMember({"calgary", "canterbury", "enwik8"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!isa.empty()) {
    braid::kernels::set_active_isa(isa == "avx2" ? braid::kernels::Isa::kAvx2
                                   : isa == "sse2" ? braid::kernels::Isa::kSse2
                                                   : braid::kernels::Isa::kScalar);
  }

  try {
    if (compress->parsed()) return run_compress(ca);
    if (decompress->parsed()) return run_decompress(d_format, d_in, d_out);
    if (bench->parsed()) {
      if (ba.corpus.empty() && ba.manifest.empty()) {
        std::fprintf(stderr, "braidz: bench needs --corpus or --manifest\n");
        return kExitUsage;
      }
      return run_bench(ba);
    }
    if (manifest->parsed()) {
      std::cout << braid::bench::manifest_json(*braid::bench::builtin_corpus(m_name)) << '\n';
      return kExitOk;
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "braidz: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "braidz: %s\n", e.what());
    return kExitIo;
  }
  return kExitUsage;
}
