#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "cubetile/io.hpp"

namespace cubetile {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return std::string(CUBETILE_FIXTURE_DIR) + "/" + name + ".mesh";
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("cubetile_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string out(const std::string& sub) const { return (dir_ / sub).string(); }

  fs::path dir_;
};

TEST_F(CliTest, PipelineCube6WritesEveryDocument) {
  const auto r = run({"pipeline", fixture("cube6"), "--out", out("a"), "--samples", "20000"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  for (const char* name : {"validation.json", "metric.json", "result.json", "tiling.json",
                           "verification.json", "decision.json", "tiling.obj"}) {
    EXPECT_TRUE(fs::exists(dir_ / "a" / name)) << name;
  }
  const auto decision = nlohmann::json::parse(read_file(out("a/decision.json")));
  EXPECT_EQ(decision["verdict"], "fails");
  const auto verification = nlohmann::json::parse(read_file(out("a/verification.json")));
  EXPECT_TRUE(verification["pass"].get<bool>());
  for (const auto& entry : fs::directory_iterator(dir_ / "a")) {
    EXPECT_NE(entry.path().extension(), ".tmp");
  }
}

TEST_F(CliTest, PipelineIsByteDeterministic) {
  for (const char* d : {"a", "b"}) {
    run({"pipeline", fixture("grid211_split6"), "--out", out(d), "--seed", "5", "--samples",
         "20000"});
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(dir_ / "a")) {
    const auto name = entry.path().filename().string();
    EXPECT_EQ(read_file(entry.path().string()), read_file(out("b/" + name))) << name;
    ++compared;
  }
  EXPECT_GE(compared, 7u);
}

TEST_F(CliTest, MissingInputIsUsageError) {
  EXPECT_EQ(run({"solve", out("missing.mesh")}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate", fixture("cube6")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"solve", fixture("cube6"), "--tol", "-1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"pipeline", fixture("cube6")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"solve", fixture("cube6"), "--weighted"}).code, cli::kExitUsage);
}

TEST_F(CliTest, SolvePrintsResultDocument) {
  const auto r = run({"solve", fixture("cube6")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["h"].get<double>(), 1.0, 1e-6);
  EXPECT_TRUE(doc["converged"].get<bool>());
  EXPECT_EQ(doc["m0"].size(), 8u);
}

TEST_F(CliTest, IterationCapIsNonConvergence) {
  EXPECT_EQ(run({"solve", fixture("grid222"), "--max-iter", "1"}).code, cli::kExitNotConverged);
}

TEST_F(CliTest, ChainedSubcommands) {
  ASSERT_EQ(run({"solve", fixture("cube6"), "--out", out("s")}).code, cli::kExitOk);
  ASSERT_EQ(run({"tile", fixture("cube6"), "--result", out("s/result.json"), "--out", out("s")}).code,
            cli::kExitOk);
  const auto v = run({"verify", fixture("cube6"), "--result", out("s/result.json"), "--tiling",
                      out("s/tiling.json"), "--samples", "10000"});
  EXPECT_EQ(v.code, cli::kExitOk) << v.err;
  const auto e = run({"export", fixture("cube6"), "--tiling", out("s/tiling.json"), "--result",
                      out("s/result.json")});
  EXPECT_EQ(e.code, cli::kExitOk);
  EXPECT_NE(e.out.find("o box7"), std::string::npos);
  EXPECT_EQ(run({"tile", fixture("grid211"), "--result", out("s/result.json")}).code,
            cli::kExitUsage);
}

TEST_F(CliTest, TripleExitCodes) {
  EXPECT_EQ(run({"check-triple", fixture("cube6")}).code, cli::kExitFailed);
  EXPECT_EQ(run({"check-triple", fixture("hourglass")}).code, cli::kExitOk);
  EXPECT_EQ(run({"check-triple", fixture("cube6"), "--budget", "0"}).code, cli::kExitUnknown);
  const auto r = run({"check-triple", fixture("hourglass")});
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["verdict"], "holds");
  EXPECT_EQ(doc["spine"]["outcome"], "found");
}

TEST_F(CliTest, ValidateExitCodes) {
  EXPECT_EQ(run({"validate", fixture("cube6")}).code, cli::kExitOk);
  EXPECT_EQ(run({"validate", fixture("hourglass")}).code, cli::kExitFailed);
}

TEST_F(CliTest, OracleReportsGap) {
  const auto r = run({"oracle", fixture("cube6")});
  EXPECT_EQ(r.code, cli::kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_LE(doc["gap"].get<double>(), 1e-4);
}

TEST_F(CliTest, WeightedPipeline) {
  const auto r = run({"pipeline", fixture("cube6_weighted"), "--weighted", "--out", out("w"),
                      "--samples", "10000"});
  EXPECT_TRUE(r.code == cli::kExitOk || r.code == cli::kExitFailed) << r.err;
  const auto tiling = nlohmann::json::parse(read_file(out("w/tiling.json")));
  EXPECT_EQ(tiling["weights"].size(), 8u);
}

TEST_F(CliTest, ConfigFileSuppliesOptions) {
  fs::create_directories(dir_);
  {
    std::ofstream cfg(dir_ / "run.toml");
    cfg << "max-iter = 1\n";
  }
  EXPECT_EQ(run({"solve", fixture("grid222"), "--config", out("run.toml")}).code,
            cli::kExitNotConverged);
}

}  // namespace
}  // namespace cubetile
