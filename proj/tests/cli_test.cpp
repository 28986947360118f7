#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dagdec/cli.hpp"
#include "dagdec/instance_io.hpp"
#include "test_support.hpp"

namespace dagdec {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
  nlohmann::json doc() const { return nlohmann::json::parse(out); }
};

CliResult RunArgs(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dagdec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    i2_ = Write("I2.json", testing::MakeI2());
    i4_ = Write("I4.json", testing::MakeI4());
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string &name, const Instance &inst) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << SerializeInstance(inst).dump(2);
    return p.string();
  }

  fs::path dir_;
  std::string i2_, i4_;
};

TEST_F(CliTest, DecodeJointViterbiOnI4) {
  const CliResult r = RunArgs({"decode", "--strategy", "joint-viterbi", "--beta", "0", "--input", i4_});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = r.doc();
  EXPECT_EQ(doc["hypothesis"]["path_text"], "1,2,3,4");
  EXPECT_EQ(doc["hypothesis"]["path"], (std::vector<int>{1, 2, 3, 4}));
  EXPECT_NEAR(doc["hypothesis"]["joint_logprob"].get<double>(), std::log(0.127008), 1e-11);
  EXPECT_EQ(doc["chosen_length"], 4);
  EXPECT_EQ(doc["per_length"].size(), 3u);
  EXPECT_EQ(doc["config"]["strategy"], "joint-viterbi");
  EXPECT_EQ(doc["config"]["beta"], 0.0);
  EXPECT_EQ(doc["input_digest"], Sha256Hex(ReadFile(i4_)));
}

TEST_F(CliTest, DecodeAllLengthsAndBaselines) {
  CliResult r = RunArgs({"decode", "--strategy", "viterbi", "--input", i4_, "--all-lengths"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.doc()["all_lengths"].size(), 3u);
  EXPECT_EQ(r.doc()["config"]["beta"], 1.0);

  r = RunArgs({"decode", "--strategy", "greedy", "--input", i4_});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.doc()["hypothesis"]["tokens"], (std::vector<int>{0, 1, 0, 1}));

  EXPECT_EQ(RunArgs({"decode", "--strategy", "greedy", "--input", i4_, "--all-lengths"}).code,
            kExitUsage);
  EXPECT_EQ(RunArgs({"decode", "--strategy", "beam", "--input", i4_}).code, kExitUsage);
  EXPECT_EQ(RunArgs({"decode", "--strategy", "viterbi", "--beta", "-1", "--input", i4_}).code,
            kExitUsage);
}

TEST_F(CliTest, ScoreI2) {
  const CliResult r = RunArgs({"score", "--input", i2_, "--path", "1,2", "--tokens", "0,1", "--marginal"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = r.doc();
  EXPECT_NEAR(doc["joint_logprob"].get<double>(), std::log(0.72), 1e-11);
  EXPECT_EQ(doc["path_logprob"].get<double>(), 0.0);
  EXPECT_NEAR(doc["marginal_logprob"].get<double>(), std::log(0.72), 1e-11);
}

TEST_F(CliTest, ScoreErrors) {
  EXPECT_EQ(RunArgs({"score", "--input", i4_, "--path", "1,3,2,4", "--tokens", "0,0,0,0"}).code,
            kExitData);
  EXPECT_EQ(RunArgs({"score", "--input", i4_, "--path", "1,x", "--tokens", "0,0"}).code, kExitUsage);
  EXPECT_EQ(RunArgs({"score", "--input", i4_, "--path", "1,4", "--tokens", "0,7"}).code, kExitData);
  EXPECT_EQ(RunArgs({"score", "--input", i4_, "--path", "1,4", "--tokens", "0"}).code, kExitData);
}

TEST_F(CliTest, MissingFileIsDataError) {
  const CliResult r = RunArgs({"decode", "--strategy", "viterbi", "--input", (dir_ / "missing.json").string()});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, InvalidInstanceNeedsOverride) {
  nlohmann::json doc = SerializeInstance(testing::MakeI2());
  doc["log_emissions"][0][0] = 0.3;
  const fs::path p = dir_ / "bad.json";
  std::ofstream(p) << doc.dump();
  EXPECT_EQ(RunArgs({"decode", "--strategy", "greedy", "--input", p.string()}).code, kExitData);
  EXPECT_EQ(RunArgs({"decode", "--strategy", "greedy", "--input", p.string(), "--allow-invalid"}).code,
            kExitOk);
}

TEST_F(CliTest, UnreachableTerminalIsInfeasible) {
  // Row 2 has no successor; only an override lets it load.
  const Instance dead = Instance::FromProbabilities({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}},
                                                    {{1}, {1}, {1}});
  const std::string p = Write("dead.json", dead);
  EXPECT_EQ(RunArgs({"decode", "--strategy", "viterbi", "--input", p, "--allow-invalid"}).code,
            kExitInfeasible);
  EXPECT_EQ(RunArgs({"decode", "--strategy", "greedy", "--input", p, "--allow-invalid"}).code,
            kExitInfeasible);
}

TEST_F(CliTest, OracleModes) {
  CliResult r = RunArgs({"oracle", "--input", i4_, "--mode", "joint"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(r.doc()["global_best"]["probability"].get<double>(), 0.127008, 1e-15);
  EXPECT_EQ(r.doc()["path_count"], 4);

  r = RunArgs({"oracle", "--input", i4_, "--mode", "marginal", "--tokens", "0,1,0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(r.doc()["probability"].get<double>(), 0.05616, 1e-15);

  EXPECT_EQ(RunArgs({"oracle", "--input", i4_, "--mode", "marginal"}).code, kExitUsage);
  EXPECT_EQ(RunArgs({"oracle", "--input", i4_, "--cap", "3"}).code, kExitData);
}

TEST_F(CliTest, GenDecodeOracleAgree) {
  const fs::path out = dir_ / "gen";
  CliResult r = RunArgs({"gen", "--length", "7", "--vocab", "3", "--seed", "40", "--count", "4",
                     "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.doc()["files"].size(), 4u);
  for (int k = 0; k < 4; ++k) {
    const std::string file = (out / ("inst_" + std::to_string(40 + k) + ".json")).string();
    ASSERT_TRUE(fs::exists(file));
    const auto dec = RunArgs({"decode", "--strategy", "joint-viterbi", "--beta", "0", "--input", file});
    const auto orc = RunArgs({"oracle", "--input", file, "--mode", "joint"});
    ASSERT_EQ(dec.code, 0);
    ASSERT_EQ(orc.code, 0);
    EXPECT_NEAR(dec.doc()["hypothesis"]["joint_logprob"].get<double>(),
                orc.doc()["global_best"]["logprob"].get<double>(), 1e-10);
  }
}

TEST_F(CliTest, AnalyzeIsDeterministic) {
  const fs::path out = dir_ / "set";
  ASSERT_EQ(RunArgs({"gen", "--length", "8", "--vocab", "4", "--seed", "1", "--count", "12", "--out",
                 out.string(), "--workers", "3"})
                .code,
            0);
  const std::vector<std::string> args{"analyze", "--inputs", out.string(), "--strategies",
                                      "lookahead,joint-viterbi", "--score", "marginal",
                                      "--beta", "0", "--workers", "2"};
  const CliResult a = RunArgs(args);
  const CliResult b = RunArgs(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto doc = a.doc();
  EXPECT_EQ(doc["report"]["instance_count"], 12);
  EXPECT_EQ(doc["input_digest"].size(), 12u);
  EXPECT_EQ(doc["report"]["optimum_match_rate"]["joint-viterbi"], 1.0);
}

TEST_F(CliTest, Bench) {
  const CliResult r = RunArgs({"bench", "--length", "32", "--vocab", "8", "--count", "2", "--reps",
                           "3", "--strategies", "greedy,joint-viterbi"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["timings"]["strategies"]["greedy"]["ratio_to_baseline"], 1.0);
  EXPECT_EQ(RunArgs({"bench", "--length", "8", "--vocab", "2", "--reps", "1"}).code, kExitUsage);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunArgs({}).code, kExitUsage);
  EXPECT_EQ(RunArgs({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(RunArgs({"decode", "--input", i4_}).code, kExitUsage);
  EXPECT_EQ(RunArgs({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace dagdec
