#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hkq/cli.hpp"
#include "hkq/levelset.hpp"
#include "hkq/report_json.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hkq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = hkq::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string golden(const char* name) { return slurp(std::string(HKQ_GOLDEN_DIR) + "/" + name); }

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST(Cli, CheckTripleExitCodes) {
  const auto a = run({"check", "triple", "1,2,3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("admissible: true"), std::string::npos);
  const auto b = run({"check", "triple", "1,3,5"});
  EXPECT_EQ(b.code, 1);
  EXPECT_NE(b.out.find("admissible: false (gcd(p1-p2, p1-p3) = 2)"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check", "triple", "1,2"}).code, 2);
  EXPECT_EQ(run({"check", "theta", "1,0,1"}).code, 2);
  EXPECT_EQ(run({"check", "quad", "a,b,c,d"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"check", "triple", "1,2,3", "--format", "csv"}).code, 2);
  EXPECT_EQ(run({"sample", "--family", "cube", "--weights", "1,2,3"}).code, 2);
  const auto r = run({"check", "triple", "1,2"});
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, NegativeThetaEntriesParse) {
  const auto r = run({"check", "theta", "-1,0,1;0,1,-1"});
  EXPECT_NE(r.code, 2) << r.err;
  const auto m = hkq::cli::parse_theta("-1,0,1;0,1,-1");
  EXPECT_EQ(m.p[0], -1);
  EXPECT_EQ(m.q[2], -1);
}

TEST(Cli, CheckThetaGoldenHuman) {
  const auto r = run({"check", "theta", "1,0,1;0,1,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("check_theta1.txt"));
}

TEST(Cli, CheckThetaGoldenJson) {
  const auto r = run({"check", "theta", "1,0,1;0,1,1", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("check_theta1.json"));
}

TEST(Cli, HumanAndJsonCarryTheSameVerdicts) {
  for (const std::vector<std::string> cmd :
       {std::vector<std::string>{"check", "theta", "1,0,1;0,1,1"},
        {"check", "theta", "1,0,1;0,1,2"}, {"check", "theta", "9,2,7;40,9,31"},
        {"check", "triple", "2,3,4"}, {"check", "quad", "1,2,3,4"}}) {
    auto human = run(cmd);
    auto jcmd = cmd;
    jcmd.insert(jcmd.end(), {"--format", "json"});
    const auto j = nlohmann::json::parse(run(jcmd).out);
    EXPECT_EQ(human.code, run(jcmd).code);
    for (const auto& [name, v] : j.at("verdicts").items()) {
      std::string line = name + ": " + (v.at("value").get<bool>() ? "true" : "false");
      const std::string reason = v.at("reason").get<std::string>();
      if (!reason.empty()) line += " (" + reason + ")";
      EXPECT_NE(human.out.find(line + "\n"), std::string::npos) << line;
    }
  }
}

TEST(Cli, ObstructionReport) {
  const auto r = run({"obstruction", "theta", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("rows").size(), 8u);
  for (const auto& row : j.at("rows")) EXPECT_GE(row.at("count_pm3").get<int>(), 1);
  EXPECT_FALSE(j.at("two_or_more_pm3_everywhere").get<bool>());
}

TEST(Cli, EnumerateCsvHeader) {
  const auto r = run({"enumerate", "triples", "--bound", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "# predicate=admissible_triple bound=6\np1,p2,p3\n1,2,3\n1,3,4\n"
                   "1,5,6\n2,3,5\n3,4,5\n");
  const auto q = run({"enumerate", "quads", "--bound", "4", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(q.out).at("tuples"), nlohmann::json::array({{0, 1, 2, 3}, {0, 1, 3, 4}}));
}

TEST(Cli, SampleValidateRoundTrip) {
  const std::string path = temp_path("hkq_cli_samples.json");
  const auto s = run({"sample", "--family", "triple", "--weights", "1,2,3", "--count", "12",
                      "--seed", "5", "--out", path});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto doc = nlohmann::json::parse(slurp(path));
  EXPECT_EQ(doc.at("seed"), 5);
  EXPECT_EQ(doc.at("count"), 12);
  const auto spec = hkq::LevelSetSpec::triple({{1, 2, 3}});
  for (const auto& pt : hkq::samples_from_json(doc))
    EXPECT_NEAR(hkq::constraint_residual(pt.u, spec).norm(), pt.residual, 1e-14);
  const auto v = run({"validate", path});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("valid: true"), std::string::npos);
}

TEST(Cli, SampleOutputIndependentOfThreads) {
  const auto a = run({"sample", "--family", "theta", "--weights", "1,0,1;0,1,1", "--count", "9",
                      "--threads", "1"});
  const auto b = run({"sample", "--family", "theta", "--weights", "1,0,1;0,1,1", "--count", "9",
                      "--threads", "4"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CalibrateWritesAUsableConvention) {
  const std::string path = temp_path("hkq_cli_conv.json");
  const auto r = run({"calibrate-octonions", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("matching conventions: 2"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(path));
}

TEST(Cli, CertifyThetaPassesWithOrbifoldNote) {
  const auto r = run({"certify", "--family", "theta", "--weights", "1,0,1;0,1,1", "--count", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("singular_orders: (1,3,1,1)"), std::string::npos);
  EXPECT_NE(r.out.find("label: orbifold"), std::string::npos);
}
