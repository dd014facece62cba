#pragma once

#include <chrono>
#include <string>

#include "sandwich/config.hpp"
#include "sandwich/lattice.hpp"
#include "sandwich/report.hpp"

namespace sandwich {

struct RunResult {
  Json report;
  bool passed = false;
};

/// Runs the configured suites in dependency order (roots, relroots, group,
/// sandwich) and assembles the report. Everything except the trailing
/// "timing" object is a function of the config alone.
inline RunResult run_suites(const RunConfig& cfg) {
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); };
  const auto start = clock::now();

  const bool model_suites = cfg.runs("group") || cfg.runs("sandwich");
  // Resolve models before any work so config errors surface first.
  const std::vector<ModelSpec> specs = model_suites ? cfg.models() : std::vector<ModelSpec>{};
  std::vector<GroupModel> models;
  try {
    for (const auto& s : specs) models.push_back(s.build());
  } catch (const ConstructionError& e) {
    throw ConfigError(e.what());
  }

  Json results = Json::object();
  Json timing = Json::object();
  bool passed = true;

  if (cfg.runs("roots")) {
    const auto t0 = clock::now();
    results["roots"] = run_roots_suite(cfg.options);
    timing["roots"] = seconds(t0);
    passed = passed && results["roots"]["verdict"] == "pass";
  }
  if (cfg.runs("relroots")) {
    const auto t0 = clock::now();
    results["relroots"] = run_relroots_suite(cfg.options);
    timing["relroots"] = seconds(t0);
    passed = passed && results["relroots"]["verdict"] == "pass";
  }
  if (model_suites) {
    Json per_model = Json::array();
    Json model_timing = Json::array();
    for (std::size_t k = 0; k < models.size(); ++k) {
      const auto t0 = clock::now();
      const LatticeContext c = LatticeContext::build(models[k], cfg.cap, cfg.jobs);
      Json entry = model_header(c, specs[k].negative_control);
      Json times = {{"model", models[k].group_name()}, {"build", seconds(t0)}};
      if (specs[k].negative_control) {
        CheckList control;
        control.add("hypotheses violated", "negative control", !c.hypotheses.passes(),
                    {{"hypotheses_pass", c.hypotheses.passes()}});
        entry["control"] = control.to_json();
        passed = passed && !control.failed();
      }
      if (cfg.runs("group")) {
        const auto t1 = clock::now();
        entry["group"] = run_group_suite(c, cfg.options);
        times["group"] = seconds(t1);
        passed = passed && entry["group"]["verdict"] == "pass";
      }
      if (cfg.runs("sandwich")) {
        const auto t1 = clock::now();
        entry["sandwich"] = run_sandwich_suite(c, cfg.options, cfg.jobs);
        times["sandwich"] = seconds(t1);
        passed = passed && entry["sandwich"]["verdict"] == "pass";
      }
      per_model.push_back(std::move(entry));
      model_timing.push_back(std::move(times));
    }
    results["models"] = std::move(per_model);
    timing["models"] = std::move(model_timing);
  }
  timing["total"] = seconds(start);

  Json report;
  report["schema_version"] = kSchemaVersion;
  report["tool"] = "sandwich";
  report["config"] = cfg.to_json();
  report["results"] = std::move(results);
  report["verdict"] = passed ? "pass" : "fail";
  report["timing"] = std::move(timing);
  return {std::move(report), passed};
}

}  // namespace sandwich
