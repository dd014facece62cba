#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sandwich/errors.hpp"
#include "sandwich/model.hpp"
#include "sandwich/report.hpp"

namespace sandwich {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"roots", "relroots", "group", "sandwich", "all"};
  return names;
}

/// One group to run: which group, over which Z/m, for which parabolic.
struct ModelSpec {
  GroupKind kind = GroupKind::SL;
  int degree = 3;
  int modulus = 2;
  std::vector<int> blocks;  // SL only; empty means the Borel
  SpParabolic sp = SpParabolic::Borel;
  bool negative_control = false;

  GroupModel build() const { return kind == GroupKind::SL ? GroupModel::sl(degree, modulus, blocks) : GroupModel::sp4(modulus, sp); }
};

struct RunConfig {
  std::string suite;
  std::optional<std::string> model;
  std::optional<int> modulus;
  std::optional<std::string> blocks;
  std::size_t cap = kDefaultCap;
  int jobs = 1;
  std::string out;
  bool expect_violation = false;
  SuiteOptions options;

  bool runs(const std::string& s) const { return suite == "all" || suite == s; }
  std::vector<ModelSpec> models() const;
  Json to_json() const;
};

/// SL_3, SL3, sl_3, Sp_4, sp4 ...
inline std::pair<GroupKind, int> parse_model_name(std::string s) {
  std::string low;
  for (char c : s)
    if (c != '_') low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  auto degree_of = [&](std::size_t skip) {
    const std::string digits = low.substr(skip);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 2)
      throw ConfigError("cannot parse model '" + s + "' (expected SL_n or Sp_4)");
    return std::stoi(digits);
  };
  if (low.rfind("sl", 0) == 0) {
    const int n = degree_of(2);
    if (n < 2 || n > 4) throw ConfigError("SL_n needs 2 <= n <= 4, got " + s);
    return {GroupKind::SL, n};
  }
  if (low.rfind("sp", 0) == 0) {
    if (degree_of(2) != 4) throw ConfigError("only Sp_4 is supported, got " + s);
    return {GroupKind::Sp4, 4};
  }
  throw ConfigError("cannot parse model '" + s + "' (expected SL_n or Sp_4)");
}

inline std::vector<int> parse_blocks(const std::string& s) {
  std::vector<int> out;
  std::string cleaned;
  for (char c : s)
    if (c != '(' && c != ')' && c != '[' && c != ']' && c != ' ') cleaned.push_back(c);
  std::stringstream ss(cleaned);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit)) throw ConfigError("cannot parse blocks '" + s + "'");
    out.push_back(std::stoi(item));
  }
  return out;
}

inline void check_modulus(long m) {
  if (m < 2) throw ConfigError("modulus must be at least 2, got " + std::to_string(m));
  if (m > 255) throw ConfigError("modulus must be at most 255, got " + std::to_string(m));
}

inline std::vector<ModelSpec> default_models() {
  std::vector<ModelSpec> out;
  for (int m : {2, 3, 4}) out.push_back({GroupKind::SL, 3, m, {}, SpParabolic::Borel, false});
  out.push_back({GroupKind::SL, 4, 2, {}, SpParabolic::Borel, false});
  out.push_back({GroupKind::Sp4, 4, 2, {}, SpParabolic::Borel, true});
  out.push_back({GroupKind::Sp4, 4, 3, {}, SpParabolic::Borel, false});
  return out;
}

inline std::vector<ModelSpec> RunConfig::models() const {
  if (!model) {
    if (modulus || blocks) throw ConfigError("modulus and blocks need a model");
    if (expect_violation) throw ConfigError("expect_violation needs a model");
    return default_models();
  }
  if (!modulus) throw ConfigError("model " + *model + " needs a modulus");
  check_modulus(*modulus);
  ModelSpec spec;
  std::tie(spec.kind, spec.degree) = parse_model_name(*model);
  spec.modulus = *modulus;
  spec.negative_control = expect_violation;
  if (blocks) {
    if (spec.kind == GroupKind::SL) {
      spec.blocks = parse_blocks(*blocks);
    } else {
      try {
        spec.sp = parse_sp_parabolic(*blocks);
      } catch (const ConstructionError& e) {
        throw ConfigError(e.what());
      }
    }
  }
  return {spec};
}

inline Json RunConfig::to_json() const {
  Json j;
  j["suite"] = suite;
  j["model"] = model ? Json(*model) : Json(nullptr);
  j["modulus"] = modulus ? Json(*modulus) : Json(nullptr);
  j["blocks"] = blocks ? Json(*blocks) : Json(nullptr);
  j["cap"] = cap;
  j["jobs"] = jobs;
  j["expect_violation"] = expect_violation;
  j["options"] = {{"roots_max_rank", options.roots_max_rank},
                  {"relroots_max_rank", options.relroots_max_rank},
                  {"identity_triples", options.identity_triples},
                  {"pair_samples", options.pair_samples},
                  {"join_pairs", options.join_pairs},
                  {"seed", options.seed}};
  return j;
}

namespace detail {

inline long config_int(const Json& v, const std::string& key, long lo, long hi) {
  if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  const long x = v.get<long>();
  if (x < lo || x > hi)
    throw ConfigError("config key '" + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

inline std::string config_string(const Json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace detail

inline void check_suite(const std::string& s) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), s) != names.end()) return;
  std::string list;
  for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
  throw ConfigError("unknown suite '" + s + "' (valid: " + list + ")");
}

/// Applies a JSON config object on top of `cfg`.
inline void apply_config_json(RunConfig& cfg, const Json& j) {
  using detail::config_int;
  using detail::config_string;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "suite") {
      cfg.suite = config_string(v, key);
      check_suite(cfg.suite);
    } else if (key == "model") {
      cfg.model = config_string(v, key);
    } else if (key == "kind" || key == "degree") {
      // handled together below
    } else if (key == "modulus") {
      cfg.modulus = static_cast<int>(config_int(v, key, std::numeric_limits<int>::min(), std::numeric_limits<int>::max()));
      check_modulus(*cfg.modulus);
    } else if (key == "blocks" || key == "parabolic") {
      if (v.is_array()) {
        std::string s;
        for (const auto& b : v) s += (s.empty() ? "" : ",") + std::to_string(config_int(b, key, 1, 4));
        cfg.blocks = s;
      } else {
        cfg.blocks = config_string(v, key);
      }
    } else if (key == "cap") {
      cfg.cap = static_cast<std::size_t>(config_int(v, key, 1, 1L << 32));
    } else if (key == "jobs") {
      cfg.jobs = static_cast<int>(config_int(v, key, 1, 256));
    } else if (key == "out") {
      cfg.out = config_string(v, key);
    } else if (key == "expect_violation") {
      if (!v.is_boolean()) throw ConfigError("config key 'expect_violation' must be a boolean");
      cfg.expect_violation = v.get<bool>();
    } else if (key == "options") {
      if (!v.is_object()) throw ConfigError("config key 'options' must be an object");
      for (const auto& [ok, ov] : v.items()) {
        if (ok == "roots_max_rank") cfg.options.roots_max_rank = static_cast<int>(config_int(ov, ok, 1, 8));
        else if (ok == "relroots_max_rank") cfg.options.relroots_max_rank = static_cast<int>(config_int(ov, ok, 1, 6));
        else if (ok == "identity_triples") cfg.options.identity_triples = static_cast<int>(config_int(ov, ok, 1, 10000000));
        else if (ok == "pair_samples") cfg.options.pair_samples = static_cast<int>(config_int(ov, ok, 1, 1000000));
        else if (ok == "join_pairs") cfg.options.join_pairs = static_cast<int>(config_int(ov, ok, 0, 1000000));
        else if (ok == "seed") cfg.options.seed = static_cast<std::uint32_t>(config_int(ov, ok, 0, 0xffffffffL));
        else throw ConfigError("unknown option '" + ok + "'");
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (j.contains("kind") || j.contains("degree")) {
    if (j.contains("model")) throw ConfigError("give either model or kind and degree, not both");
    if (!j.contains("kind") || !j.contains("degree")) throw ConfigError("kind and degree go together");
    cfg.model = config_string(j["kind"], "kind") + "_" + std::to_string(config_int(j["degree"], "degree", 2, 4));
  }
}

inline Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace sandwich
