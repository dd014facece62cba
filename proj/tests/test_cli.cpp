#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "sandwich/config.hpp"
#include "sandwich/runner.hpp"

using namespace sandwich;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("sandwich_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

int run_cli(const std::string& args, const fs::path& out = scratch() / "report.json") {
  const std::string cmd = std::string(SANDWICH_CLI_PATH) + " " + args + " --out " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Json read_json(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

Json without_timing(Json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST(Config, MinimalConfigGetsDefaults) {
  RunConfig cfg;
  apply_config_json(cfg, Json::parse(R"({"suite": "roots"})"));
  EXPECT_EQ(cfg.suite, "roots");
  EXPECT_EQ(cfg.cap, kDefaultCap);
  EXPECT_EQ(cfg.jobs, 1);
  EXPECT_FALSE(cfg.model.has_value());
  EXPECT_EQ(cfg.models().size(), default_models().size());
  EXPECT_EQ(cfg.options.seed, SuiteOptions{}.seed);
}

TEST(Config, Rejections) {
  RunConfig cfg;
  EXPECT_THROW(apply_config_json(cfg, Json::parse(R"({"modulus": 1})")), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, Json::parse(R"({"modulus": 256})")), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, Json::parse(R"({"colour": "red"})")), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, Json::parse(R"({"options": {"depth": 3}})")), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, Json::parse(R"([1, 2])")), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, Json::parse(R"({"kind": "SL"})")), ConfigError);
  try {
    apply_config_json(cfg, Json::parse(R"({"suite": "everything"})"));
    FAIL() << "unknown suite accepted";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    for (const auto& name : suite_names()) EXPECT_NE(msg.find(name), std::string::npos) << msg;
  }
}

TEST(Config, ModelSelection) {
  RunConfig cfg;
  apply_config_json(cfg, Json::parse(R"({"suite": "group", "kind": "SL", "degree": 3, "modulus": 4, "blocks": [1, 2]})"));
  const auto specs = cfg.models();
  ASSERT_EQ(specs.size(), 1u);
  EXPECT_EQ(specs[0].kind, GroupKind::SL);
  EXPECT_EQ(specs[0].degree, 3);
  EXPECT_EQ(specs[0].modulus, 4);
  EXPECT_EQ(specs[0].blocks, (std::vector<int>{1, 2}));

  EXPECT_EQ(parse_model_name("sp4").first, GroupKind::Sp4);
  EXPECT_EQ(parse_model_name("SL_2").second, 2);
  EXPECT_THROW(parse_model_name("SL_5"), ConfigError);
  EXPECT_THROW(parse_model_name("GL_3"), ConfigError);

  RunConfig orphan;
  orphan.suite = "group";
  orphan.modulus = 3;
  EXPECT_THROW(orphan.models(), ConfigError);
  RunConfig no_mod;
  no_mod.model = "SL_3";
  EXPECT_THROW(no_mod.models(), ConfigError);
}

TEST(Runner, DeterministicApartFromTiming) {
  RunConfig cfg;
  cfg.suite = "all";
  cfg.model = "SL_3";
  cfg.modulus = 2;
  const auto a = run_suites(cfg);
  const auto b = run_suites(cfg);
  EXPECT_TRUE(a.passed);
  EXPECT_EQ(without_timing(a.report).dump(), without_timing(b.report).dump());
  EXPECT_EQ(a.report["schema_version"], "1");
  std::vector<std::string> keys;
  for (const auto& [k, v] : a.report.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "tool", "config", "results", "verdict", "timing"}));
}

TEST(Runner, ThreadCountDoesNotChangeTheReport) {
  RunConfig cfg;
  cfg.suite = "sandwich";
  cfg.model = "SL_3";
  cfg.modulus = 4;
  const auto serial = run_suites(cfg);
  cfg.jobs = 4;
  auto parallel = run_suites(cfg);
  parallel.report["config"]["jobs"] = 1;
  EXPECT_EQ(without_timing(serial.report).dump(), without_timing(parallel.report).dump());
}

TEST(Cli, PassExitsZero) {
  const fs::path out = scratch() / "relroots.json";
  EXPECT_EQ(run_cli("relroots", out), 0);
  const Json j = read_json(out);
  EXPECT_EQ(j["schema_version"], "1");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_TRUE(j["results"].contains("relroots"));
  EXPECT_EQ(run_cli("group --model SL_3 --mod 2"), 0);
}

TEST(Cli, ConfigAndSizeErrorsExitTwo) {
  EXPECT_EQ(run_cli("group --model SL_3 --mod 1"), 2);
  EXPECT_EQ(run_cli("group --model SL_7 --mod 2"), 2);
  EXPECT_EQ(run_cli("group --model SL_3"), 2);
  EXPECT_EQ(run_cli("sandwich --model SL_3 --mod 3 --cap 1000"), 2);
  EXPECT_EQ(run_cli("--config " + write_file("bad_suite.json", R"({"suite": "everything"})").string()), 2);
  EXPECT_EQ(run_cli("--config " + write_file("broken.json", "{ not json").string()), 2);
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  const fs::path cfg = write_file("cfg.json", R"({"suite": "group", "model": "SL_2", "modulus": 3, "jobs": 2})");
  const fs::path out = scratch() / "precedence.json";
  EXPECT_EQ(run_cli("--config " + cfg.string() + " --mod 5", out), 0);
  const Json j = read_json(out);
  EXPECT_EQ(j["config"]["suite"], "group");
  EXPECT_EQ(j["config"]["modulus"], 5);
  EXPECT_EQ(j["config"]["jobs"], 2);
  EXPECT_FALSE(j["results"].contains("sandwich"));
}

TEST(Cli, ExpectViolation) {
  // A model that satisfies the hypotheses cannot serve as a negative control.
  EXPECT_EQ(run_cli("sandwich --model SL_3 --mod 2 --expect-violation"), 1);
  const fs::path out = scratch() / "control.json";
  EXPECT_EQ(run_cli("all --model Sp_4 --mod 2 --expect-violation", out), 0);
  const Json j = read_json(out);
  const Json& m = j["results"]["models"][0];
  EXPECT_EQ(m["control"]["verdict"], "pass");
  bool saw_exception = false;
  for (const auto& c : m["sandwich"]["checks"]) saw_exception = saw_exception || c["verdict"] == "expected_exception";
  EXPECT_TRUE(saw_exception);
}
