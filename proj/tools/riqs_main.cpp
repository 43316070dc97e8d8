#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "riqs/experiments.hpp"
#include "riqs/json_io.hpp"

using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

struct Config {
  std::string experiment;
  uint64_t seed = 0;
  std::string out_dir = ".";
  double tol_scale = 1.0;
  std::map<std::string, double> params;
};

Config parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");

  static const std::vector<std::string> allowed_top = {
      "experiment", "seed", "out", "tol_scale", "params"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed_top.begin(), allowed_top.end(), it.key()) ==
        allowed_top.end())
      throw ConfigError("unknown field: " + it.key());

  Config cfg;
  if (!j.contains("experiment") || !j["experiment"].is_string())
    throw ConfigError("missing or non-string field: experiment");
  cfg.experiment = j["experiment"].get<std::string>();

  std::vector<std::string> allowed;
  try {
    allowed = riqs::experiments::allowed_params(cfg.experiment);
  } catch (const riqs::Error& e) {
    throw ConfigError(e.what());
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer())
      throw ConfigError("field seed must be an integer");
    cfg.seed = j["seed"].get<uint64_t>();
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("field out must be a string");
    cfg.out_dir = j["out"].get<std::string>();
  }
  if (j.contains("tol_scale")) {
    if (!j["tol_scale"].is_number())
      throw ConfigError("field tol_scale must be a number");
    cfg.tol_scale = j["tol_scale"].get<double>();
  }
  if (j.contains("params")) {
    if (!j["params"].is_object())
      throw ConfigError("field params must be an object");
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
      if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
        throw ConfigError("unknown parameter: params." + it.key());
      if (!it.value().is_number())
        throw ConfigError("parameter params." + it.key() +
                          " must be a number");
      cfg.params[it.key()] = it.value().get<double>();
    }
  }
  return cfg;
}

int do_list() {
  for (const auto& info : riqs::experiments::catalog()) {
    std::cout << info.name << "\n    " << info.description << "\n    claim: "
              << info.claim << "\n";
  }
  std::cout << riqs::experiments::catalog().size() << " experiments\n";
  return 0;
}

int do_run(const Config& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);

  riqs::experiments::ExperimentResult res;
  try {
    res = riqs::experiments::run_experiment(cfg.experiment, cfg.params,
                                            cfg.seed, cfg.tol_scale);
  } catch (const riqs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  json summary;
  summary["experiment"] = res.name;
  summary["seed"] = cfg.seed;
  summary["tol_scale"] = cfg.tol_scale;
  summary["pass"] = res.pass;
  json checks = json::array();
  for (const auto& c : res.checks) {
    json jc;
    jc["name"] = c.name;
    jc["value"] = c.value;
    jc["tol"] = c.tol;
    jc["sense"] = c.flip ? "at_least" : "at_most";
    jc["pass"] = c.pass;
    checks.push_back(jc);
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << res.name << "."
              << c.name << "  value=" << riqs::json_io::format_double(c.value)
              << (c.flip ? "  bound=" : "  tol=")
              << riqs::json_io::format_double(c.tol) << "\n";
  }
  summary["checks"] = checks;

  for (const auto& [name, table] : res.tables) {
    std::string path = cfg.out_dir + "/" + res.name + "_" + name + ".csv";
    riqs::json_io::write_csv(path, table.columns, table.rows);
    summary["tables"].push_back(path);
  }
  std::ofstream out(cfg.out_dir + "/summary.json");
  out << summary.dump(2) << "\n";

  std::cout << (res.pass ? "PASS" : "FAIL") << "  " << res.name << " ("
            << res.checks.size() << " checks)\n";
  return res.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"repeated-interaction quantum system experiments"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "catalog of experiments");

  std::string config_path;
  uint64_t seed_flag = 0;
  bool seed_set = false;
  std::string out_flag;
  double tol_scale_flag = 0.0;
  auto* run_cmd = app.add_subcommand("run", "run one experiment");
  run_cmd->add_option("config", config_path, "JSON config file")->required();
  run_cmd->add_option("--seed", seed_flag, "override the config seed")
      ->each([&](const std::string&) { seed_set = true; });
  run_cmd->add_option("--out", out_flag, "output directory");
  run_cmd->add_option("--tol-scale", tol_scale_flag,
                      "global tolerance multiplier");

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) return do_list();

  Config cfg;
  try {
    cfg = parse_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (seed_set) cfg.seed = seed_flag;
  if (!out_flag.empty()) cfg.out_dir = out_flag;
  if (tol_scale_flag > 0.0) cfg.tol_scale = tol_scale_flag;
  return do_run(cfg);
}
