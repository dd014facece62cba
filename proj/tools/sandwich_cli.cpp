#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sandwich/config.hpp"
#include "sandwich/runner.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> model;
  std::optional<long> modulus;
  std::optional<std::string> blocks;
  std::optional<std::size_t> cap;
  std::optional<int> jobs;
  std::optional<std::string> out;
  bool expect_violation = false;
};

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--model", f.model, "group: SL_2, SL_3, SL_4 or Sp_4");
  app.add_option("--mod", f.modulus, "modulus m of Z/m");
  app.add_option("--blocks", f.blocks, "block sizes such as 1,1,1 (SL) or borel, line, siegel (Sp_4)");
  app.add_option("--cap", f.cap, "largest group order to enumerate");
  app.add_option("--jobs", f.jobs, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--out", f.out, "write the report here instead of stdout");
  app.add_flag("--expect-violation", f.expect_violation, "the model is a negative control expected to break the hypotheses");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sandwich;
  CLI::App app{"Checks the sandwich classification of normal subgroups on finite Chevalley groups"};
  app.set_version_flag("--version", std::string("sandwich report schema ") + kSchemaVersion);
  Flags flags;
  add_flags(app, flags);
  app.require_subcommand(0, 1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"roots", "audit the absolute root systems"},
      {"relroots", "audit relative root systems, parabolic sets and foldings"},
      {"group", "group-level identities on each model"},
      {"sandwich", "normal subgroup classification on each model"},
      {"all", "every suite in dependency order"}};
  for (const auto& [name, help] : commands) add_flags(*app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    if (!flags.config.empty()) apply_config_json(cfg, load_config_file(flags.config));
    if (!app.get_subcommands().empty()) cfg.suite = app.get_subcommands().front()->get_name();
    if (cfg.suite.empty()) throw ConfigError("no suite given (use a subcommand or the config key 'suite')");
    if (flags.model) cfg.model = *flags.model;
    if (flags.modulus) {
      check_modulus(*flags.modulus);
      cfg.modulus = static_cast<int>(*flags.modulus);
    }
    if (flags.blocks) cfg.blocks = *flags.blocks;
    if (flags.cap) cfg.cap = *flags.cap;
    if (flags.jobs) cfg.jobs = *flags.jobs;
    if (flags.out) cfg.out = *flags.out;
    if (flags.expect_violation) cfg.expect_violation = true;

    const RunResult r = run_suites(cfg);
    const std::string text = r.report.dump(2) + "\n";
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.out);
      if (!out) throw ConfigError("cannot write report to '" + cfg.out + "'");
      out << text;
    }
    std::cerr << "sandwich: " << cfg.suite << " " << (r.passed ? "pass" : "FAIL") << "\n";
    return r.passed ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
  } catch (const SizeError& e) {
    std::cerr << "size error: " << e.what() << "\n";
  } catch (const ConstructionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
  }
  return 2;
}
