#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfw/mfw.hpp"
#include "mfw/objectives.hpp"

namespace mfw {

enum class Family { Quadratic, Revenue };

/// Per-variant schedule fields to force instead of the defaults.
struct ScheduleOverride {
  std::optional<int> K;
  std::optional<int> Q;
  std::optional<int> L;
  std::optional<double> delta;
};

struct ExperimentConfig {
  Family family = Family::Quadratic;
  int T = 200;
  int n = 25;
  int m = 15;
  double sigma = 0.1;
  std::uint64_t seed = 0;
  std::vector<Variant> variants{Variant::Meta34, Variant::Mono, Variant::Bandit};
  std::map<Variant, ScheduleOverride> overrides;
  int stride = 10;
  int k_ref = 200;
  bool stationary = false;
  bool allow_meta32 = false;
  std::string graph_path;  // revenue family only
  RevenueParams revenue;
  std::string out = "out";
};

/// Parses the JSON mirror of ExperimentConfig; throws ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
void validate_config(const ExperimentConfig& cfg);

/// The seeded reward sequence f_1..f_T and its feasible region.
class RewardStream {
 public:
  explicit RewardStream(const ExperimentConfig& cfg);

  const DownClosedPolytope& polytope() const { return polytope_; }
  int horizon() const { return static_cast<int>(rewards_.size()); }
  /// f_t for t in [1, T].
  const ObjectivePtr& at(int t) const;
  Family family() const { return family_; }

  /// Instance dump for the `gen` subcommand.
  nlohmann::json to_json() const;

 private:
  Family family_;
  DownClosedPolytope polytope_;
  std::vector<ObjectivePtr> rewards_;
};

/// Running-sum reference values sum_{m<=t} f_m(x*_t) at the requested
/// (sorted) points t. x*_t is the better of the offline measured greedy
/// solution on the prefix sum and the previous point's x*, which keeps the
/// curve nondecreasing.
struct ReferencePoint {
  int t;
  double value;
  Vector x;
};
std::vector<ReferencePoint> reference_curve(const RewardStream& stream, std::vector<int> points,
                                            int k_ref);

/// Stride points t = stride, 2 stride, ... <= T, plus T itself.
std::vector<int> stride_points(int T, int stride);

struct RegretRecord {
  int t = 0;
  double reward = 0.0;
  double cum_reward = 0.0;
  std::optional<double> ref_value;
  std::optional<double> ratio;  // (ref_value - cum_reward) / t
  std::uint64_t grad_calls = 0;   // cumulative
  std::uint64_t value_calls = 0;  // cumulative
};

struct RunResult {
  Schedule schedule;
  std::vector<RegretRecord> records;
  std::vector<Vector> played;
  std::vector<Vector> probes;  // bandit exploration points
  double wall_seconds = 0.0;
};

/// Resolves the schedule for one variant: defaults, overrides, Meta32 gate.
Schedule resolve_schedule(const ExperimentConfig& cfg, Variant variant,
                          const DownClosedPolytope& P);

/// Drives one algorithm over the stream. Reference values are attached to the
/// rows whose t appears in `reference`.
RunResult run_variant(const ExperimentConfig& cfg, const RewardStream& stream, Variant variant,
                      const std::vector<ReferencePoint>& reference);

/// CSV with header t,reward,cum_reward,ref_value,ratio,grad_calls,value_calls;
/// floats at 12 significant digits, ref_value/ratio empty off-stride.
std::string to_csv(const std::vector<RegretRecord>& records);
std::vector<RegretRecord> parse_csv(const std::string& text);

/// Full experiment: stream, shared reference curve, every configured variant
/// (run concurrently), and <out>/<variant>.csv + <variant>.meta.json +
/// reference.csv on disk.
std::map<Variant, RunResult> run_experiment(const ExperimentConfig& cfg);

struct GridOptimum {
  Vector x;
  double value;
};

/// Exhaustive grid search over [0,1]^n at `step`, restricted to P. n <= 4.
GridOptimum brute_force_opt(const Objective& f, const DownClosedPolytope& P, double step);

struct ReportRow {
  std::string variant;
  int T = 0;
  std::optional<double> final_ratio;
  std::uint64_t grad_calls = 0;
  std::uint64_t value_calls = 0;
  std::optional<double> wall_seconds;
};

/// Summarizes run CSVs (reading the .meta.json sidecars when present).
std::vector<ReportRow> report(const std::vector<std::string>& csv_paths);
nlohmann::json report_to_json(const std::vector<ReportRow>& rows);
std::string report_table(const std::vector<ReportRow>& rows);

}  // namespace mfw
