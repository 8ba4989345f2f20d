#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "sortreduce/report_io.hpp"

using namespace sortreduce;
using sortreduce::cli::run_cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sortreduce_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

// Drops the named column so that timing does not break comparisons.
std::string without_column(const std::string& csv, const std::string& column) {
  std::istringstream in(csv);
  std::string line, out;
  long drop = -1;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (drop < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i] == column) drop = static_cast<long>(i);
    }
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (static_cast<long>(i) != drop) out += fields[i] + ",";
    out += "\n";
  }
  return out;
}

}  // namespace

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run({"gen", "--dim", "50", "--modulus", "10^12", "--next-prime", "--seed", "3", "--out", path("a")}).code, 0);
  ASSERT_EQ(run({"gen", "--dim", "50", "--modulus", "10^12", "--next-prime", "--seed", "3", "--out", path("b")}).code, 0);
  EXPECT_EQ(read_file(path("a")), read_file(path("b")));
  const DualCodeword v = parse_codeword_file(read_file(path("a")));
  EXPECT_EQ(v.P(), BigInt("1000000000039"));
  EXPECT_EQ(v.dim(), 50u);
}

TEST_F(Cli, GenLoguniformAndRandomPrime) {
  ASSERT_EQ(run({"gen", "--dim", "100", "--modulus", "1000000000039", "--dist", "loguniform", "--out", path("a")}).code,
            0);
  const DualCodeword lg = parse_codeword_file(read_file(path("a")));
  for (const BigInt& x : lg.entries()) EXPECT_GE(x, 999999);
  ASSERT_EQ(run({"gen", "--dim", "10", "--modulus-bits", "64", "--out", path("b")}).code, 0);
  const DualCodeword v = parse_codeword_file(read_file(path("b")));
  EXPECT_EQ(mpz_sizeinbase(v.P().get_mpz_t(), 2), 64u);
  EXPECT_EQ(run({"gen", "--dim", "10", "--modulus", "7", "--modulus-bits", "8", "--out", path("c")}).code, 2);
  EXPECT_EQ(run({"gen", "--dim", "10", "--out", path("c")}).code, 2);
}

TEST_F(Cli, SolveThenVerifyClosesTheLoop) {
  ASSERT_EQ(run({"gen", "--dim", "300", "--modulus", "10^15", "--next-prime", "--seed", "1", "--out", path("v")}).code,
            0);
  for (const std::string algo : {"simple", "q", "block"}) {
    const Result s = run({"solve", "--algo", algo, "--codeword", path("v"), "--q", "3", "--out", path("r.json")});
    ASSERT_EQ(s.code, 0) << algo << s.err;
    const auto report = nlohmann::json::parse(read_file(path("r.json")));
    EXPECT_EQ(report.at("status"), "FOUND");
    EXPECT_TRUE(report.at("membership_verified").get<bool>());
    const Result v = run({"verify", "--codeword", path("v"), "--vector", path("r.json")});
    EXPECT_EQ(v.code, 0) << v.err;
    EXPECT_TRUE(nlohmann::json::parse(v.out).at("all_members").get<bool>());
  }
}

TEST_F(Cli, SolveZeroEntryCodeword) {
  write_file(path("v"), "4 11\n5\n0\n9\n2\n");
  const Result s = run({"solve", "--codeword", path("v")});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto j = nlohmann::json::parse(s.out);
  EXPECT_EQ(j.at("iterations"), 0);
  EXPECT_EQ(j.at("first_norm2"), "1");
}

TEST_F(Cli, ExitCodes) {
  write_file(path("bad"), "3 7\n1\n");
  EXPECT_EQ(run({"solve", "--codeword", path("bad")}).code, 3);
  EXPECT_EQ(run({"solve", "--codeword", path("missing")}).code, 3);
  EXPECT_EQ(run({"solve", "--algo", "lll", "--dim", "10", "--modulus", "101"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"solve", "--dim", "500", "--modulus", "10^30", "--max-iter", "1"}).code, 7);
  write_file(path("v"), "2 7\n4\n1\n");
  write_file(path("w"), "[[1 0]]");
  EXPECT_EQ(run({"verify", "--codeword", path("v"), "--vector", path("w")}).code, 1);
}

TEST_F(Cli, SaveConfigReproducesTheRun) {
  const Result a = run({"solve", "--algo", "general", "--dim", "30", "--modulus", "10^18", "--dstar", "512", "--seed",
                        "4", "--save-config", path("c.json"), "--out", path("a.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(run({"solve", "--config", path("c.json"), "--out", path("b.json")}).code, 0);
  auto ja = nlohmann::json::parse(read_file(path("a.json")));
  auto jb = nlohmann::json::parse(read_file(path("b.json")));
  ja.erase("wall_ms");
  jb.erase("wall_ms");
  EXPECT_EQ(ja, jb);
}

TEST_F(Cli, PredictTableFive) {
  const Result r = run({"predict", "--grid", "table5", "--model", "fit"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("3.13E+102,1000,fit,94"), std::string::npos) << r.out.substr(0, 300);
  const Result rec = run({"predict", "-P", "1e102", "-d", "1000", "--model", "recursion"});
  EXPECT_NE(rec.out.find("recursion,109"), std::string::npos) << rec.out;
  const Result gen = run({"predict", "-P", "1e120", "--dstar", "1e6", "--model", "general"});
  EXPECT_NE(gen.out.find(",20"), std::string::npos) << gen.out;
  EXPECT_EQ(run({"predict", "-P", "50", "-d", "1000", "--model", "fit"}).code, 6);
}

TEST_F(Cli, ExtractExample) {
  write_file(path("b"), "[[1 3][0 7]]");
  ASSERT_EQ(run({"extract", "--basis", path("b"), "--out", path("v")}).code, 0);
  EXPECT_EQ(read_file(path("v")), "2 7\n4\n1\n");
  const auto side = nlohmann::json::parse(read_file(path("v") + ".json"));
  EXPECT_TRUE(side.at("prime").get<bool>());
  write_file(path("s"), "[[5 0][0 5]]");
  EXPECT_EQ(run({"extract", "--basis", path("s"), "--out", path("x")}).code, 5);
  write_file(path("z"), "[[1 2][2 4]]");
  EXPECT_EQ(run({"extract", "--basis", path("z"), "--out", path("x")}).code, 5);
}

TEST_F(Cli, BenchIsDeterministicApartFromTiming) {
  const std::vector<std::string> args{"bench", "--suite", "table4", "--seeds", "1", "--threads", "1"};
  auto a_args = args, b_args = args;
  a_args.insert(a_args.end(), {"--out", path("a.csv")});
  b_args.insert(b_args.end(), {"--out", path("b.csv")});
  ASSERT_EQ(run(a_args).code, 0);
  ASSERT_EQ(run(b_args).code, 0);
  const std::string a = read_file(path("a.csv"));
  EXPECT_EQ(without_column(a, "wall_ms"), without_column(read_file(path("b.csv")), "wall_ms"));
  EXPECT_NE(a.find("FOUND"), std::string::npos);
}
