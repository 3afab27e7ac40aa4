#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "braid/inflate.hpp"
#include "support.hpp"

namespace braid {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun braidz(const std::string& args) {
  const std::string cmd = std::string(BRAIDZ_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("braidz_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const Bytes& data) const {
    std::ofstream out(dir_ / name, std::ios::binary);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  }
  Bytes read(const std::string& name) const { return testing::read_file(dir_ / name); }

  fs::path dir_;
};

TEST_F(Cli, CompressDecompressRoundTrip) {
  std::mt19937_64 rng(1);
  const Bytes in = testing::fuzz_input(rng, testing::FuzzKind::kText, 30000);
  write("in", in);
  for (const char* fmt : {"gzip", "zlib", "raw"}) {
    for (const char* mode : {"greedy", "optimal"}) {
      const CliRun c = braidz(std::string("compress --fast --mode ") + mode + " --format " + fmt + " -o " +
                           path("c") + " " + path("in"));
      ASSERT_EQ(c.status, 0) << fmt << " " << mode;
      EXPECT_NE(c.out.find("LO=30000"), std::string::npos);
      EXPECT_NE(c.out.find("CP="), std::string::npos);
      EXPECT_NE(c.out.find("blocks="), std::string::npos);
      const std::string dfmt = std::string(fmt) == "raw" ? " --format raw" : "";
      ASSERT_EQ(braidz("decompress" + dfmt + " -o " + path("d") + " " + path("c")).status, 0);
      EXPECT_EQ(read("d"), in);
    }
  }
}

TEST_F(Cli, EmptyFileAndDeterminism) {
  write("empty", {});
  const CliRun r = braidz("compress -o " + path("e.gz") + " " + path("empty"));
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(read("e.gz").size(), 20u);
  EXPECT_NE(r.out.find("undefined"), std::string::npos);

  std::mt19937_64 rng(2);
  write("in", testing::fuzz_input(rng, testing::FuzzKind::kRepetitive, 50000));
  ASSERT_EQ(braidz("compress --iterations 10 -o " + path("a.gz") + " " + path("in")).status, 0);
  ASSERT_EQ(braidz("compress --iterations 10 -o " + path("b.gz") + " " + path("in")).status, 0);
  ASSERT_EQ(braidz("--isa scalar compress --iterations 10 -o " + path("s.gz") + " " + path("in")).status, 0);
  EXPECT_EQ(read("a.gz"), read("b.gz"));
  EXPECT_EQ(read("a.gz"), read("s.gz"));
}

TEST_F(Cli, ExitStatuses) {
  write("in", testing::bytes_of("some bytes to squeeze, some bytes to squeeze"));
  EXPECT_EQ(braidz("compress -o " + path("x") + " " + path("missing")).status, 2);
  EXPECT_EQ(braidz("compress -o " + path("nodir/x") + " " + path("in")).status, 2);
  EXPECT_EQ(braidz("compress --max-blocks 101 -o " + path("x") + " " + path("in")).status, 1);
  EXPECT_EQ(braidz("compress --mode lazy -o " + path("x") + " " + path("in")).status, 1);
  EXPECT_EQ(braidz("").status, 1);

  // Unknown magic and a flipped payload byte are corrupt streams.
  EXPECT_EQ(braidz("decompress -o " + path("d") + " " + path("in")).status, 3);
  ASSERT_EQ(braidz("compress -o " + path("c.gz") + " " + path("in")).status, 0);
  Bytes gz = read("c.gz");
  gz[gz.size() - 8] ^= 0x40;
  write("bad.gz", gz);
  EXPECT_EQ(braidz("decompress -o " + path("d") + " " + path("bad.gz")).status, 3);

  EXPECT_EQ(braidz("bench --corpus nowhere --csv " + path("r.csv")).status, 4);
  EXPECT_EQ(braidz("bench --manifest " + path("absent.json") + " --csv " + path("r.csv")).status, 4);
  EXPECT_EQ(braidz("bench --corpus canterbury --corpus-dir " + path("") + " --csv " + path("r.csv")).status, 4);
  EXPECT_EQ(braidz("bench --corpus canterbury --codec zstd --csv " + path("r.csv")).status, 4);
}

TEST_F(Cli, BenchWithManifest) {
  std::mt19937_64 rng(3);
  write("one.txt", testing::fuzz_input(rng, testing::FuzzKind::kText, 8000));
  write("two.bin", testing::fuzz_input(rng, testing::FuzzKind::kBinary, 6000));
  {
    std::ofstream m(dir_ / "m.json");
    m << R"({"name": "mini", "source_urls": [], "files": [{"name": "one.txt", "size": 8000}, {"name": "two.bin", "size": 6000}]})";
  }
  const CliRun r = braidz("bench --manifest " + path("m.json") + " --corpus-dir " + dir_.string() +
                       " --codec lz77,lzss,geflochtener-greedy,geflochtener-optimal --fast --jobs 2 --link-speed 10MBps --csv " +
                       path("r.csv"));
  ASSERT_EQ(r.status, 0);
  std::ifstream csv(dir_ / "r.csv");
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(csv, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 1u + 8u + 4u);
  EXPECT_EQ(lines[0], "corpus,file,codec,LO,LC,CP,transmit_ms,wall_ms,redundancy_pct,preset");
  EXPECT_EQ(lines[1].rfind("mini,one.txt,lz77,8000,", 0), 0u);
  EXPECT_NE(lines[1].find(",fast"), std::string::npos);
  EXPECT_NE(r.out.find("braid-optimal"), std::string::npos);
}

TEST_F(Cli, ManifestCommand) {
  const CliRun r = braidz("manifest canterbury");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("alice29.txt"), std::string::npos);
  EXPECT_NE(r.out.find("152089"), std::string::npos);
  EXPECT_EQ(braidz("manifest silesia").status, 1);
}

}  // namespace
}  // namespace braid
