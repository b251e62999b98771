#include "l1cert/cli.hpp"
#include "l1cert/core.hpp"

#include "json.hpp"
#include "test_matrices.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace l1cert {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "l1cert");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("l1cert_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const Matrix& m) const {
    write_matrix_file(path(name), m);
    return path(name);
  }

  fs::path dir_;
};

TEST_F(Cli, CertifyIdentity) {
  const std::string file = write("eye.txt", testing::identity(8).entries());
  const Outcome o = run_cli({"certify", file});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["command"], "certify");
  EXPECT_EQ(j["s_alpha1"]["s"], 8);
  EXPECT_EQ(j["matrix"]["k"], 8);
}

TEST_F(Cli, OracleOnBoundaryInstance) {
  const std::string file = write("ones.txt", testing::ones_row().entries());
  const Outcome o = run_cli({"oracle", file, "--s", "1"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NEAR(json::parse(o.out)["gammahat"].get<double>(), 0.5, 1e-9);
}

TEST_F(Cli, CertifyOrdering) {
  const std::string file = write("g.txt", testing::gaussian(8, 20, 3).entries());
  const Outcome o = run_cli({"certify", file, "--full"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  const int s_mu = j["s_mu"]["s"];
  const int s_a1 = j["s_alpha1"]["s"];
  const int s_as = j["s_alphas"]["s"];
  EXPECT_LE(s_mu, s_a1);
  EXPECT_LE(s_a1, s_as);
}

TEST_F(Cli, GenWritesSidecar) {
  const std::string file = path("h.txt");
  const Outcome o = run_cli({"gen", "--family", "hadamard", "--k", "6", "--n", "16", "--seed", "4", "--out", file});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const SensingMatrix a = read_matrix_file(file);
  EXPECT_EQ(a.rows(), 6);
  EXPECT_EQ(a.cols(), 16);
  std::ifstream side(file + ".json");
  ASSERT_TRUE(side.good());
  const json meta = json::parse(side);
  EXPECT_EQ(meta["family"], "hadamard");
  EXPECT_EQ(meta["seed"], 4);

  const Outcome m = run_cli({"mu", file});
  ASSERT_EQ(m.code, kExitOk) << m.err;
  const json j = json::parse(m.out);
  EXPECT_EQ(j["matrix"]["family"], "hadamard");
  EXPECT_EQ(j["matrix"]["seed"], 4);
}

TEST_F(Cli, RecoverRoundTrip) {
  const Matrix a = testing::identity(5).entries();
  const std::string file = write("eye.txt", a);
  Vector y(5);
  y << 0.0, 2.0, 0.0, -1.0, 0.0;
  write_vector_file(path("y.txt"), y);
  const Outcome o = run_cli({"recover", file, "--y", path("y.txt"), "--out", path("x.txt")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_TRUE(json::parse(o.out)["result"]["feasible"]);
  EXPECT_LE((read_vector_file(path("x.txt")) - y).lpNorm<Eigen::Infinity>(), 1e-6);
}

TEST_F(Cli, TableCsv) {
  const Outcome o = run_cli({"table", "--family", "gaussian", "--n", "24", "--fractions", "0.25,0.5", "--no-upper"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::istringstream lines(o.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("# l1cert table v1", 0), 0u) << line;
  std::getline(lines, line);
  EXPECT_EQ(line, "m,s_mu,s_alpha1,s_bar,cpu_seconds");
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("6,", 0), 0u) << line;
  EXPECT_NE(line.find(",NA,"), std::string::npos) << line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("12,", 0), 0u) << line;
}

TEST_F(Cli, ExitCodes) {
  const std::string file = write("g.txt", testing::gaussian(4, 12, 1).entries());
  auto expect = [](const Outcome& o, int code, const std::string& kind) {
    EXPECT_EQ(o.code, code) << o.err;
    EXPECT_EQ(o.err.rfind("error: " + kind + ":", 0), 0u) << o.err;
    EXPECT_EQ(o.err.find('\n'), o.err.size() - 1) << o.err;
  };
  expect(run_cli({"alphas", file, "--s", "0"}), kExitArgument, "argument");
  expect(run_cli({"alpha1", file, "--beta", "2", "--norm", "l2"}), kExitArgument, "argument");
  expect(run_cli({"alpha1", file, "--beta", "abc"}), kExitArgument, "argument");
  expect(run_cli({"mu", path("missing.txt")}), kExitArgument, "argument");
  expect(run_cli({"bogus"}), kExitArgument, "argument");
  expect(run_cli({"table", "--family", "gaussian", "--n", "10", "--fractions", "1.5"}), kExitArgument, "argument");
  expect(run_cli({"--oracle-limit", "10", "oracle", file, "--s", "3"}), kExitResource, "resource");
  expect(run_cli({"--lp-limit", "10", "alphas", file, "--s", "2"}), kExitResource, "resource");
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace l1cert
