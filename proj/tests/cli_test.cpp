#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vrimg/image_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(VRIMG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vrimg_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    put("ex3.pgm", "P2\n3 3\n1\n0 0 0\n1 0 0\n1 1 0\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void put(const std::string& name, const std::string& text) { vrimg::write_file_atomic(dir_ / name, text); }
  std::string in(const std::string& name) const { return "--input " + (dir_ / name).string() + " --out " + dir_.string(); }
  fs::path operator/(const std::string& name) const { return dir_ / name; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, Build) {
  const auto r = run(in("ex3.pgm") + " build --counts");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "vertices=14 edges=20\n");
  const std::string csv = slurp(*this / "ex3_build.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "s,v_from,v_to,w");
  EXPECT_NE(csv.find("\n1,0,2,1\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(*this / "ex3_build_counts.csv"));
  EXPECT_EQ(run(in("ex3.pgm") + " build --epsilon 0").code, 0);
  EXPECT_NE(slurp(*this / "ex3_build.csv").find("\n1,0,2,1,0\n"), std::string::npos);
}

TEST_F(Cli, ComponentsAndBarcode) {
  EXPECT_EQ(run(in("ex3.pgm") + " components --epsilon 0").out, "components=7\n");
  EXPECT_EQ(run(in("ex3.pgm") + " components --epsilon 1").out, "components=1\n");
  EXPECT_TRUE(fs::exists(*this / "ex3_components.csv"));
  const auto b = run(in("ex3.pgm") + " barcode");
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(b.out, "epsilon,components\n0,7\n1,1\n");
  EXPECT_EQ(slurp(*this / "ex3_barcode.csv"), b.out);
}

TEST_F(Cli, DetectComponent) {
  const auto r = run(in("ex3.pgm") + " detect --mode component --epsilon 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "regions=3 size=2\n");
  const auto overlay = vrimg::load_image(*this / "ex3_detect.pgm");
  EXPECT_EQ(overlay.at(0, 2), 128);
  EXPECT_EQ(overlay.at(1, 0), 1);
  EXPECT_NE(slurp(*this / "ex3_detect.json").find("\"kind\": \"square\""), std::string::npos);
}

TEST_F(Cli, DetectThresholdAndRectangles) {
  EXPECT_EQ(run(in("ex3.pgm") + " detect --mode threshold --threshold 2").out, "regions=3 size=2\n");
  EXPECT_EQ(run(in("ex3.pgm") + " detect --mode threshold --threshold 1").out, "regions=9 size=1\n");
  const auto r = run(in("ex3.pgm") + " detect --mode threshold --threshold 2 --class rectangles");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "regions=4 area=2\n");
  EXPECT_EQ(run(in("ex3.pgm") + " --format png detect --mode threshold --threshold 2").code, 0);
  EXPECT_TRUE(fs::exists(*this / "ex3_detect.png"));
}

TEST_F(Cli, Sweep) {
  const auto r = run(in("ex3.pgm") + " sweep --epsilon 1 --n-max 1 --cumulative");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("n=0 t=2 size=2 regions=3"), std::string::npos);
  EXPECT_NE(r.out.find("n=1 t=1 size=1 regions=9"), std::string::npos);
  EXPECT_TRUE(fs::exists(*this / "ex3_sweep_000.pgm"));
  EXPECT_TRUE(fs::exists(*this / "ex3_sweep_001.pgm"));
  EXPECT_TRUE(fs::exists(*this / "ex3_sweep.json"));
}

TEST_F(Cli, Depth) {
  EXPECT_EQ(run(in("ex3.pgm") + " depth").out, "brute=2/3 fast=2/3 via_complex=3/3 discrepancy=+1\n");
  std::string flat = "P2\n5 5\n255\n";
  for (int i = 0; i < 25; ++i) flat += "9 ";
  put("flat.pgm", flat);
  const auto f = run(in("flat.pgm") + " depth");
  EXPECT_EQ(f.code, 0);
  EXPECT_NE(f.out.find("fast=1/5"), std::string::npos);
  EXPECT_NE(f.out.find("via_complex=undefined"), std::string::npos);
  std::string many = "P2\n4 4\n255\n";
  for (int i = 0; i < 16; ++i) many += std::to_string(i * 7) + " ";
  put("many.pgm", many);
  const auto m = run(in("many.pgm") + " depth");
  EXPECT_EQ(m.code, 0);
  EXPECT_NE(m.out.find("brute=skipped"), std::string::npos);
  EXPECT_NE(m.out.find("fast=3/4"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run(in("ex3.pgm")).code, 2);
  EXPECT_EQ(run(in("ex3.pgm") + " detect --mode component").code, 2);
  EXPECT_EQ(run(in("ex3.pgm") + " detect --mode threshold --threshold 3").code, 2);
  EXPECT_EQ(run(in("ex3.pgm") + " detect --mode sideways").code, 2);
  EXPECT_EQ(run("--input " + (*this / "missing.pgm").string() + " barcode").code, 2);
  put("wide.pgm", "P2\n3 2\n1\n0 1 0\n1 0 1\n");
  EXPECT_EQ(run(in("wide.pgm") + " barcode").code, 2);
  EXPECT_EQ(run(in("wide.pgm") + " --crop barcode").code, 0);
  put("junk.pgm", "P2\n3 3\n1\n0 0\n");
  EXPECT_EQ(run(in("junk.pgm") + " barcode").code, 1);
}

TEST_F(Cli, Deterministic) {
  ASSERT_EQ(run(in("ex3.pgm") + " detect --mode component --epsilon 0").code, 0);
  const std::string a = slurp(*this / "ex3_detect.pgm"), aj = slurp(*this / "ex3_detect.json");
  ASSERT_EQ(run(in("ex3.pgm") + " detect --mode component --epsilon 0").code, 0);
  EXPECT_EQ(slurp(*this / "ex3_detect.pgm"), a);
  EXPECT_EQ(slurp(*this / "ex3_detect.json"), aj);
}
