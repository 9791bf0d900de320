#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "mfw/errors.hpp"
#include "mfw/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> variant;
  std::optional<int> stride;
};

mfw::ExperimentConfig load_config(const CommonFlags& f) {
  mfw::ExperimentConfig cfg;
  fs::path base;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw mfw::ConfigError(fmt::format("cannot open config '{}'", f.config));
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw mfw::ConfigError(fmt::format("config '{}': {}", f.config, e.what()));
    }
    cfg = mfw::config_from_json(j);
    base = fs::path(f.config).parent_path();
  }
  if (f.seed) cfg.seed = *f.seed;
  if (f.out) cfg.out = *f.out;
  if (f.variant) cfg.variants = {mfw::parse_variant(*f.variant)};
  if (f.stride) cfg.stride = *f.stride;
  // Relative graph paths resolve against the config file when not found as given.
  if (!cfg.graph_path.empty() && fs::path(cfg.graph_path).is_relative() &&
      !fs::exists(cfg.graph_path) && fs::exists(base / cfg.graph_path)) {
    cfg.graph_path = (base / cfg.graph_path).string();
  }
  mfw::validate_config(cfg);
  return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

int cmd_gen(const CommonFlags& f) {
  const auto cfg = load_config(f);
  const mfw::RewardStream stream(cfg);
  json j = stream.to_json();
  j["config"] = mfw::config_to_json(cfg);
  const fs::path path = fs::path(cfg.out) / "instance.json";
  write_text(path, j.dump() + "\n");
  fmt::print("wrote {}\n", path.string());
  return 0;
}

int cmd_run(const CommonFlags& f) {
  const auto cfg = load_config(f);
  const auto results = mfw::run_experiment(cfg);
  for (const auto& [v, res] : results) {
    const auto& last = res.records.back();
    fmt::print("{:<8} T={} K={} Q={} L={} grad_calls={} value_calls={} wall={:.2f}s\n",
               mfw::to_string(v), res.schedule.T, res.schedule.K, res.schedule.Q, res.schedule.L,
               last.grad_calls, last.value_calls, res.wall_seconds);
  }
  fmt::print("outputs in {}\n", cfg.out);
  return 0;
}

int cmd_reference(const CommonFlags& f) {
  const auto cfg = load_config(f);
  const mfw::RewardStream stream(cfg);
  const auto curve =
      mfw::reference_curve(stream, mfw::stride_points(cfg.T, cfg.stride), cfg.k_ref);
  std::string csv = "t,ref_value\n";
  for (const auto& r : curve) csv += fmt::format("{},{:.12g}\n", r.t, r.value);
  const fs::path path = fs::path(cfg.out) / "reference.csv";
  write_text(path, csv);
  fmt::print("wrote {} ({} points, k_ref={})\n", path.string(), curve.size(), cfg.k_ref);
  return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const std::optional<std::string>& out) {
  std::vector<std::string> csvs;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.path().extension() == ".csv" && e.path().filename() != "reference.csv") {
          found.push_back(e.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      csvs.insert(csvs.end(), found.begin(), found.end());
    } else {
      csvs.push_back(in);
    }
  }
  if (csvs.empty()) throw mfw::ConfigError("report: no run CSVs given");
  const auto rows = mfw::report(csvs);
  fmt::print("{}", mfw::report_table(rows));
  const fs::path json_path =
      out ? fs::path(*out) / "report.json" : fs::path(csvs.front()).parent_path() / "report.json";
  write_text(json_path, mfw::report_to_json(rows).dump(2) + "\n");
  fmt::print("wrote {}\n", json_path.string());
  return 0;
}

void add_common(CLI::App* sub, CommonFlags& f, bool with_variant) {
  sub->add_option("--config", f.config, "Experiment config (JSON)");
  sub->add_option("--seed", f.seed, "Seed override");
  sub->add_option("--out", f.out, "Output directory");
  sub->add_option("--stride", f.stride, "Reference stride");
  if (with_variant) {
    sub->add_option("--variant", f.variant, "Run a single variant")
        ->check(CLI::IsMember({"meta32", "meta34", "mono", "bandit"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online measured Frank-Wolfe experiments"};
  app.require_subcommand(1);

  CommonFlags gen_flags;
  CommonFlags run_flags;
  CommonFlags ref_flags;
  add_common(app.add_subcommand("gen", "Emit the instance (polytope and rewards) as JSON"),
             gen_flags, false);
  add_common(app.add_subcommand("run", "Run the configured variants and write CSVs"), run_flags,
             true);
  add_common(app.add_subcommand("reference", "Compute the offline reference curve"), ref_flags,
             false);
  auto* report_cmd = app.add_subcommand("report", "Summarize run CSVs");
  std::vector<std::string> report_inputs;
  std::optional<std::string> report_out;
  report_cmd->add_option("inputs", report_inputs, "CSV files or run directories")->required();
  report_cmd->add_option("--out", report_out, "Where to write report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("gen")) return cmd_gen(gen_flags);
    if (app.got_subcommand("run")) return cmd_run(run_flags);
    if (app.got_subcommand("reference")) return cmd_reference(ref_flags);
    return cmd_report(report_inputs, report_out);
  } catch (const mfw::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 2;
  } catch (const mfw::NumericalError& e) {
    fmt::print(stderr, "numerical failure: {}\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
