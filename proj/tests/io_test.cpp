#include <gtest/gtest.h>

#include <cmath>

#include "dagdec/errors.hpp"
#include "dagdec/generator.hpp"
#include "dagdec/instance_io.hpp"
#include "dagdec/scoring.hpp"
#include "test_support.hpp"

namespace dagdec {
namespace {

using testing::MakeI2;
using testing::MakeI4;

ErrorKind KindOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const DecodeError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a DecodeError";
  return ErrorKind::kPrecondition;
}

TEST(ParseInstanceTest, SerializedCanonicalInstancesRoundTrip) {
  for (const Instance &inst : {MakeI2(), MakeI4()}) {
    const std::string text = SerializeInstance(inst).dump();
    EXPECT_EQ(ParseInstanceText(text), inst);
  }
  const nlohmann::json doc = SerializeInstance(MakeI2());
  EXPECT_TRUE(doc["log_transitions"][0][0].is_null());
  EXPECT_TRUE(doc["log_transitions"][1][1].is_null());
  EXPECT_EQ(doc["log_transitions"][0][1].get<double>(), 0.0);
}

// Finite entries survive text serialization bit for bit; -inf maps to null.
TEST(ParseInstanceTest, RoundTripIsBitExactOnGeneratedInstances) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GeneratorConfig cfg;
    cfg.length = 2 + seed % 9;
    cfg.vocab_size = 1 + seed % 5;
    cfg.seed = seed;
    cfg.sparsity = (seed % 3) * 0.3;
    cfg.transition_concentration = seed % 2 ? 0.05 : 2.0;
    const Instance inst = GenerateInstance(cfg);
    const std::string text = SerializeInstance(inst, {{"seed", seed}}).dump(2);
    const Instance back = ParseInstanceText(text);
    ASSERT_EQ(back, inst);
    EXPECT_EQ(SerializeInstance(back, {{"seed", seed}}).dump(2), text);
  }
}

TEST(ParseInstanceTest, VocabIsKept) {
  nlohmann::json doc = SerializeInstance(MakeI2());
  doc["vocab"] = {"yes", "no"};
  EXPECT_EQ(ParseInstanceText(doc.dump()).vocab(), (std::vector<std::string>{"yes", "no"}));
  doc["vocab"] = {"yes"};
  EXPECT_EQ(KindOf([&] { ParseInstanceText(doc.dump()); }), ErrorKind::kShape);
}

TEST(ParseInstanceTest, ShapeMismatch) {
  nlohmann::json doc = SerializeInstance(MakeI4());
  doc["log_transitions"].erase(3);
  for (auto &row : doc["log_transitions"]) row.erase(3);
  EXPECT_EQ(KindOf([&] { ParseInstanceText(doc.dump()); }), ErrorKind::kShape);

  nlohmann::json ragged = SerializeInstance(MakeI4());
  ragged["log_emissions"][2].push_back(0.0);
  EXPECT_EQ(KindOf([&] { ParseInstanceText(ragged.dump()); }), ErrorKind::kShape);
}

TEST(ParseInstanceTest, PositiveLogProbIsAViolationUnlessOverridden) {
  nlohmann::json doc = SerializeInstance(MakeI2());
  doc["log_emissions"][0][0] = 0.3;
  try {
    ParseInstanceText(doc.dump());
    FAIL();
  } catch (const ValidationError &e) {
    bool positive = false;
    for (const auto &v : e.violations())
      positive |= v.kind == Violation::Kind::kPositiveLogProb && v.row == 1;
    EXPECT_TRUE(positive);
  }
  EXPECT_NO_THROW(ParseInstanceText(doc.dump(), ParseOptions{.validate = false}));
}

TEST(ParseInstanceTest, MalformedDocuments) {
  EXPECT_EQ(KindOf([] { ParseInstanceText(std::string_view("{\"L\": 2,")); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseInstanceText(std::string_view("[1,2]")); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseInstanceText(std::string_view(R"({"L": 2})")); }), ErrorKind::kParse);
  nlohmann::json doc = SerializeInstance(MakeI2());
  doc["log_emissions"][1][0] = "-inf";
  try {
    ParseInstanceText(doc.dump());
    FAIL();
  } catch (const DecodeError &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("log_emissions[1][0]"), std::string::npos);
  }
  doc = SerializeInstance(MakeI2());
  doc["L"] = 0;
  EXPECT_EQ(KindOf([&] { ParseInstanceText(doc.dump()); }), ErrorKind::kParse);
}

TEST(GeneratorTest, DeterministicInSeed) {
  GeneratorConfig cfg;
  cfg.length = 4;
  cfg.vocab_size = 2;
  cfg.seed = 7;
  EXPECT_EQ(GenerateInstance(cfg), GenerateInstance(cfg));
  GeneratorConfig other = cfg;
  other.seed = 8;
  EXPECT_FALSE(GenerateInstance(cfg) == GenerateInstance(other));
}

TEST(GeneratorTest, OutputsAlwaysValidate) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GeneratorConfig cfg;
    cfg.length = 1 + seed % 20;
    cfg.vocab_size = 1 + seed % 7;
    cfg.seed = seed;
    cfg.sparsity = (seed % 5) * 0.2375;
    cfg.transition_concentration = seed % 3 == 0 ? 0.01 : 1.0;
    cfg.emission_concentration = seed % 4 == 0 ? 0.01 : 0.7;
    const auto violations = Validate(GenerateInstance(cfg));
    EXPECT_TRUE(violations.empty()) << "seed " << seed << ": " << violations.front().message;
  }
}

TEST(GeneratorTest, SmallConcentrationLowersEntropy) {
  double sharp = 0.0, flat = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorConfig cfg;
    cfg.length = 10;
    cfg.seed = seed;
    cfg.transition_concentration = 0.01;
    sharp += ComputeEntropyStats(GenerateInstance(cfg)).transition_entropy;
    cfg.transition_concentration = 1.0;
    flat += ComputeEntropyStats(GenerateInstance(cfg)).transition_entropy;
  }
  EXPECT_LT(sharp, flat);
}

TEST(GeneratorTest, SparsityForbidsTransitions) {
  GeneratorConfig cfg;
  cfg.length = 30;
  cfg.sparsity = 0.8;
  const Instance inst = GenerateInstance(cfg);
  std::size_t forbidden = 0, total = 0;
  for (std::size_t t = 1; t < 30; ++t)
    for (std::size_t to = t + 1; to <= 30; ++to, ++total)
      forbidden += inst.log_transition(t, to) == -INFINITY;
  EXPECT_GT(forbidden, total / 2);
}

TEST(GeneratorTest, RejectsBadConfigs) {
  auto bad = [](auto mutate) {
    GeneratorConfig cfg;
    mutate(cfg);
    return KindOf([&] { GenerateInstance(cfg); });
  };
  EXPECT_EQ(bad([](GeneratorConfig &c) { c.sparsity = 1.0; }), ErrorKind::kConfig);
  EXPECT_EQ(bad([](GeneratorConfig &c) { c.sparsity = -0.1; }), ErrorKind::kConfig);
  EXPECT_EQ(bad([](GeneratorConfig &c) { c.length = 0; }), ErrorKind::kConfig);
  EXPECT_EQ(bad([](GeneratorConfig &c) { c.vocab_size = 0; }), ErrorKind::kConfig);
  EXPECT_EQ(bad([](GeneratorConfig &c) { c.transition_concentration = 0.0; }), ErrorKind::kConfig);
  EXPECT_EQ(bad([](GeneratorConfig &c) { c.emission_concentration = -1.0; }), ErrorKind::kConfig);
}

TEST(OutputFormattingTest, LogProbsUseTwelveSignificantDigits) {
  EXPECT_TRUE(LogProbJson(-INFINITY).is_null());
  EXPECT_EQ(LogProbJson(std::log(0.127008)).get<double>(), -2.06350520238);
  EXPECT_EQ(LogProbJson(0.0).get<double>(), 0.0);
}

TEST(DigestTest, KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace dagdec
