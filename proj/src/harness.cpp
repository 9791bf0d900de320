#include "mfw/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "mfw/errors.hpp"
#include "mfw/rng.hpp"

namespace mfw {

namespace {

using nlohmann::json;

constexpr double kPlayTol = 1e-8;

std::string family_name(Family f) { return f == Family::Quadratic ? "quadratic" : "revenue"; }

Family parse_family(const std::string& s) {
  if (s == "quadratic") return Family::Quadratic;
  if (s == "revenue") return Family::Revenue;
  throw ConfigError(fmt::format("unknown family '{}' (expected quadratic|revenue)", s));
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
  }
}

// Prefix sums of the reward stream, kept in closed form per family.
class PrefixSum {
 public:
  void add(const Objective& f) {
    if (const auto* q = dynamic_cast<const QuadraticObjective*>(&f)) {
      if (quad_) {
        *quad_ += *q;
      } else {
        quad_ = *q;
      }
    } else if (const auto* r = dynamic_cast<const RevenueObjective*>(&f)) {
      if (rev_) {
        *rev_ += *r;
      } else {
        rev_ = *r;
      }
    } else {
      throw std::invalid_argument("reference: unsupported objective type");
    }
  }

  const Objective& get() const {
    if (quad_) return *quad_;
    if (rev_) return *rev_;
    throw std::logic_error("reference: empty prefix");
  }

 private:
  std::optional<QuadraticObjective> quad_;
  std::optional<RevenueObjective> rev_;
};

std::string fmt_float(double v) { return fmt::format("{:.12g}", v); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << contents;
  if (!out) throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
}

json vector_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json matrix_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) rows.push_back(vector_json(M.row(i).transpose()));
  return rows;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{
      "family", "T",          "n",            "m",     "sigma", "seed", "variants",
      "variant", "overrides", "stride",       "k_ref", "stationary",    "allow_meta32",
      "graph",  "p",          "B",            "select", "weight", "out"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError(fmt::format("unknown config key '{}'", key));
  }
  ExperimentConfig cfg;
  cfg.family = parse_family(get_or<std::string>(j, "family", "quadratic"));
  cfg.T = get_or(j, "T", cfg.T);
  cfg.n = get_or(j, "n", cfg.n);
  cfg.m = get_or(j, "m", cfg.m);
  cfg.sigma = get_or(j, "sigma", cfg.sigma);
  cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
  if (j.contains("variants")) {
    cfg.variants.clear();
    for (const auto& v : get_or<std::vector<std::string>>(j, "variants", {})) {
      cfg.variants.push_back(parse_variant(v));
    }
  } else if (j.contains("variant")) {
    cfg.variants = {parse_variant(get_or<std::string>(j, "variant", ""))};
  }
  if (j.contains("overrides")) {
    for (const auto& [name, o] : j.at("overrides").items()) {
      ScheduleOverride ov;
      if (o.contains("K")) ov.K = get_or(o, "K", 0);
      if (o.contains("Q")) ov.Q = get_or(o, "Q", 0);
      if (o.contains("L")) ov.L = get_or(o, "L", 0);
      if (o.contains("delta")) ov.delta = get_or(o, "delta", 0.0);
      cfg.overrides[parse_variant(name)] = ov;
    }
  }
  cfg.stride = get_or(j, "stride", cfg.stride);
  cfg.k_ref = get_or(j, "k_ref", cfg.k_ref);
  cfg.stationary = get_or(j, "stationary", cfg.stationary);
  cfg.allow_meta32 = get_or(j, "allow_meta32", cfg.allow_meta32);
  cfg.graph_path = get_or<std::string>(j, "graph", "");
  cfg.revenue.p = get_or(j, "p", cfg.revenue.p);
  cfg.revenue.budget = get_or(j, "B", cfg.revenue.budget);
  cfg.revenue.select = get_or(j, "select", cfg.revenue.select);
  cfg.revenue.weight = get_or(j, "weight", cfg.revenue.weight);
  cfg.out = get_or<std::string>(j, "out", cfg.out);
  validate_config(cfg);
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["family"] = family_name(cfg.family);
  j["T"] = cfg.T;
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["sigma"] = cfg.sigma;
  j["seed"] = cfg.seed;
  j["variants"] = json::array();
  for (Variant v : cfg.variants) j["variants"].push_back(to_string(v));
  if (!cfg.overrides.empty()) {
    json o = json::object();
    for (const auto& [v, ov] : cfg.overrides) {
      json e = json::object();
      if (ov.K) e["K"] = *ov.K;
      if (ov.Q) e["Q"] = *ov.Q;
      if (ov.L) e["L"] = *ov.L;
      if (ov.delta) e["delta"] = *ov.delta;
      o[to_string(v)] = e;
    }
    j["overrides"] = o;
  }
  j["stride"] = cfg.stride;
  j["k_ref"] = cfg.k_ref;
  j["stationary"] = cfg.stationary;
  j["allow_meta32"] = cfg.allow_meta32;
  if (!cfg.graph_path.empty()) j["graph"] = cfg.graph_path;
  j["p"] = cfg.revenue.p;
  j["B"] = cfg.revenue.budget;
  j["select"] = cfg.revenue.select;
  j["weight"] = cfg.revenue.weight;
  j["out"] = cfg.out;
  return j;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.T < 1) throw ConfigError("T must be >= 1");
  if (!(cfg.sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  if (cfg.stride < 1) throw ConfigError("stride must be >= 1");
  if (cfg.k_ref < 1) throw ConfigError("k_ref must be >= 1");
  if (cfg.m < 0) throw ConfigError("m must be >= 0");
  if (cfg.variants.empty()) throw ConfigError("at least one variant is required");
  if (cfg.family == Family::Quadratic && cfg.n < 1) throw ConfigError("n must be >= 1");
  if (cfg.family == Family::Revenue) {
    if (cfg.graph_path.empty()) throw ConfigError("revenue family needs a graph path");
    if (!(cfg.revenue.p > 0.0 && cfg.revenue.p < 1.0)) throw ConfigError("p must be in (0,1)");
    if (!(cfg.revenue.budget > 0.0)) throw ConfigError("B must be > 0");
    if (cfg.revenue.select < 1) throw ConfigError("select must be >= 1");
  }
}

RewardStream::RewardStream(const ExperimentConfig& cfg)
    : family_(cfg.family), polytope_(DownClosedPolytope::UnitBox(1)) {
  validate_config(cfg);
  auto instance_rng = CounterRng::Stream(cfg.seed, {kTagInstance});
  rewards_.reserve(static_cast<std::size_t>(cfg.T));
  if (cfg.family == Family::Quadratic) {
    polytope_ = gen_constraints(cfg.n, cfg.m, instance_rng);
    for (int t = 1; t <= cfg.T; ++t) {
      if (cfg.stationary && t > 1) {
        rewards_.push_back(rewards_.front());
        continue;
      }
      auto rng = CounterRng::Stream(cfg.seed, {kTagObjective, static_cast<std::uint64_t>(t)});
      rewards_.push_back(std::make_shared<QuadraticObjective>(gen_quadratic_objective(cfg.n, rng)));
    }
  } else {
    const Graph g = load_graph(cfg.graph_path);
    if (g.vertices < cfg.revenue.select) {
      throw ConfigError(fmt::format("graph '{}' has {} vertices; rounds select {}", cfg.graph_path,
                                    g.vertices, cfg.revenue.select));
    }
    polytope_ = gen_revenue_constraints(g.vertices, cfg.m, instance_rng);
    for (int t = 1; t <= cfg.T; ++t) {
      if (cfg.stationary && t > 1) {
        rewards_.push_back(rewards_.front());
        continue;
      }
      auto rng = CounterRng::Stream(cfg.seed, {kTagRoundSample, static_cast<std::uint64_t>(t)});
      rewards_.push_back(
          std::make_shared<RevenueObjective>(sample_round_objective(g, rng, cfg.revenue)));
    }
  }
}

const ObjectivePtr& RewardStream::at(int t) const {
  if (t < 1 || t > horizon()) {
    throw std::out_of_range(fmt::format("reward stream: t = {} outside [1, {}]", t, horizon()));
  }
  return rewards_[static_cast<std::size_t>(t - 1)];
}

json RewardStream::to_json() const {
  json j;
  j["family"] = family_name(family_);
  j["polytope"] = json::parse(mfw::to_json(polytope_));
  json rewards = json::array();
  for (const auto& f : rewards_) {
    if (const auto* q = dynamic_cast<const QuadraticObjective*>(f.get())) {
      rewards.push_back({{"H", matrix_json(q->H())}, {"h", vector_json(q->h())}, {"c", q->c()}});
    } else if (const auto* r = dynamic_cast<const RevenueObjective*>(f.get())) {
      json edges = json::array();
      for (Eigen::Index i = 0; i < r->W().rows(); ++i) {
        for (Eigen::Index k = i + 1; k < r->W().cols(); ++k) {
          if (r->W()(i, k) > 0.0) edges.push_back({i, k, r->W()(i, k)});
        }
      }
      rewards.push_back({{"p", r->p()}, {"B", r->budget()}, {"edges", edges}});
    }
  }
  j["rewards"] = rewards;
  return j;
}

std::vector<int> stride_points(int T, int stride) {
  std::vector<int> pts;
  for (int t = stride; t <= T; t += stride) pts.push_back(t);
  if (pts.empty() || pts.back() != T) pts.push_back(T);
  return pts;
}

std::vector<ReferencePoint> reference_curve(const RewardStream& stream, std::vector<int> points,
                                            int k_ref) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<ReferencePoint> out;
  if (points.empty()) return out;
  if (points.front() < 1 || points.back() > stream.horizon()) {
    throw std::out_of_range("reference_curve: point outside the stream");
  }
  PrefixSum sum;
  std::size_t next = 0;
  for (int t = 1; t <= points.back(); ++t) {
    sum.add(*stream.at(t));
    if (t != points[next]) continue;
    const Objective& F = sum.get();
    Vector x = offline_measured_greedy(F, stream.polytope(), k_ref);
    double value = F.value(x);
    if (!out.empty()) {
      const double kept = F.value(out.back().x);
      if (kept > value) {
        value = kept;
        x = out.back().x;
      }
    }
    out.push_back(ReferencePoint{t, value, std::move(x)});
    ++next;
  }
  return out;
}

Schedule resolve_schedule(const ExperimentConfig& cfg, Variant variant,
                          const DownClosedPolytope& P) {
  if (variant == Variant::Meta32 && !cfg.allow_meta32) {
    throw ConfigError(fmt::format(
        "meta32 uses ceil(T^1.5) = {} gradient calls per round; set allow_meta32 to run it",
        static_cast<long long>(std::ceil(std::pow(cfg.T, 1.5) - 1e-9))));
  }
  Schedule s = make_schedule(cfg.T, variant, P);
  auto it = cfg.overrides.find(variant);
  if (it == cfg.overrides.end()) return s;
  const ScheduleOverride& ov = it->second;
  switch (variant) {
    case Variant::Meta32:
    case Variant::Meta34:
      if (ov.K) s.K = *ov.K;
      if (ov.Q || ov.L || ov.delta) throw ConfigError("meta schedules only take a K override");
      break;
    case Variant::Mono:
      if (ov.K) s.K = *ov.K;
      if (s.K < 1) throw ConfigError("mono K override must be >= 1");
      s.Q = ov.Q ? *ov.Q : cfg.T / s.K;
      s.L = s.K;
      s.T = s.Q * s.K;
      if (ov.L || ov.delta) throw ConfigError("mono schedules take K and Q overrides only");
      break;
    case Variant::Bandit:
      if (ov.Q) s.Q = *ov.Q;
      if (s.Q < 1) throw ConfigError("bandit Q override must be >= 1");
      s.L = ov.L ? *ov.L : cfg.T / s.Q;
      s.T = s.L * s.Q;
      if (ov.K) s.K = *ov.K;
      if (ov.delta) s.delta = *ov.delta;
      break;
  }
  if (s.T > cfg.T) {
    throw ConfigError(fmt::format("schedule override plays {} rounds but T = {}", s.T, cfg.T));
  }
  validate_schedule(s, P);
  return s;
}

RunResult run_variant(const ExperimentConfig& cfg, const RewardStream& stream, Variant variant,
                      const std::vector<ReferencePoint>& reference) {
  const DownClosedPolytope& P = stream.polytope();
  RunResult res{resolve_schedule(cfg, variant, P), {}, {}, {}, 0.0};
  const Schedule& s = res.schedule;
  if (variant == Variant::Meta32) {
    fmt::print(stderr, "warning: meta32 runs K = {} gradient queries per round ({} total)\n", s.K,
               static_cast<long long>(s.K) * s.T);
  }
  const auto start = std::chrono::steady_clock::now();
  const auto T = static_cast<std::size_t>(s.T);
  res.played.reserve(T);
  std::vector<std::uint64_t> grad_calls(T, 0);
  std::vector<std::uint64_t> value_calls(T, 0);
  auto noise_rng = [&](int t) {
    return CounterRng::Stream(cfg.seed, {kTagGradientNoise, static_cast<std::uint64_t>(t)});
  };

  switch (variant) {
    case Variant::Meta32:
    case Variant::Meta34: {
      MetaMfw alg(P, s.K, s.T);
      for (int t = 1; t <= s.T; ++t) {
        StochasticGradientOracle oracle(stream.at(t), cfg.sigma, noise_rng(t));
        res.played.push_back(alg.round(oracle));
        grad_calls[static_cast<std::size_t>(t - 1)] = oracle.call_count();
      }
      break;
    }
    case Variant::Mono: {
      MonoMfw alg(P, s.K, s.Q, cfg.seed);
      for (int q = 0; q < s.Q; ++q) {
        std::vector<StochasticGradientOracle> oracles;
        oracles.reserve(static_cast<std::size_t>(s.K));
        for (int i = 1; i <= s.K; ++i) {
          const int t = q * s.K + i;
          oracles.emplace_back(stream.at(t), cfg.sigma, noise_rng(t));
        }
        for (Vector& y : alg.block(oracles)) res.played.push_back(std::move(y));
        for (int i = 0; i < s.K; ++i) {
          grad_calls[static_cast<std::size_t>(q * s.K + i)] =
              oracles[static_cast<std::size_t>(i)].call_count();
        }
      }
      break;
    }
    case Variant::Bandit: {
      BanditMfw alg(P, s.K, s.L, s.Q, s.delta, cfg.seed);
      for (int q = 0; q < s.Q; ++q) {
        std::vector<ValueOracle> oracles;
        oracles.reserve(static_cast<std::size_t>(s.L));
        for (int i = 1; i <= s.L; ++i) oracles.emplace_back(stream.at(q * s.L + i));
        BanditBlock blk = alg.block(oracles);
        for (Vector& y : blk.played) res.played.push_back(std::move(y));
        for (Vector& p : blk.probes) res.probes.push_back(std::move(p));
        for (int i = 0; i < s.L; ++i) {
          value_calls[static_cast<std::size_t>(q * s.L + i)] =
              oracles[static_cast<std::size_t>(i)].call_count();
        }
      }
      break;
    }
  }
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::map<int, double> ref;
  for (const auto& r : reference) ref[r.t] = r.value;
  RegretRecord acc;
  res.records.reserve(T);
  for (int t = 1; t <= s.T; ++t) {
    const Vector& y = res.played[static_cast<std::size_t>(t - 1)];
    if (!contains(P, y, kPlayTol)) {
      throw NumericalError(fmt::format("{}: played point at t = {} is infeasible",
                                       to_string(variant), t));
    }
    RegretRecord row;
    row.t = t;
    row.reward = stream.at(t)->value(y);
    row.cum_reward = acc.cum_reward + row.reward;
    row.grad_calls = acc.grad_calls + grad_calls[static_cast<std::size_t>(t - 1)];
    row.value_calls = acc.value_calls + value_calls[static_cast<std::size_t>(t - 1)];
    if (auto it = ref.find(t); it != ref.end()) {
      row.ref_value = it->second;
      row.ratio = (it->second - row.cum_reward) / t;
    }
    res.records.push_back(row);
    acc = row;
  }
  return res;
}

std::string to_csv(const std::vector<RegretRecord>& records) {
  std::string out = "t,reward,cum_reward,ref_value,ratio,grad_calls,value_calls\n";
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.t, fmt_float(r.reward), fmt_float(r.cum_reward),
                       r.ref_value ? fmt_float(*r.ref_value) : "",
                       r.ratio ? fmt_float(*r.ratio) : "", r.grad_calls, r.value_calls);
  }
  return out;
}

std::vector<RegretRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "t,reward,cum_reward,ref_value,ratio,grad_calls,value_calls") {
    throw std::runtime_error("csv: unexpected header");
  }
  std::vector<RegretRecord> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw std::runtime_error(fmt::format("csv: line {} has {} fields", lineno, f.size()));
    try {
      RegretRecord r;
      r.t = std::stoi(f[0]);
      r.reward = std::stod(f[1]);
      r.cum_reward = std::stod(f[2]);
      if (!f[3].empty()) r.ref_value = std::stod(f[3]);
      if (!f[4].empty()) r.ratio = std::stod(f[4]);
      r.grad_calls = std::stoull(f[5]);
      r.value_calls = std::stoull(f[6]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw std::runtime_error(fmt::format("csv: malformed number on line {}", lineno));
    }
  }
  return rows;
}

std::map<Variant, RunResult> run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const RewardStream stream(cfg);
  std::vector<Schedule> schedules;
  std::vector<int> points;
  for (Variant v : cfg.variants) {
    schedules.push_back(resolve_schedule(cfg, v, stream.polytope()));
    for (int t : stride_points(schedules.back().T, cfg.stride)) points.push_back(t);
  }
  const auto reference = reference_curve(stream, points, cfg.k_ref);

  std::vector<std::future<RunResult>> jobs;
  for (Variant v : cfg.variants) {
    jobs.push_back(std::async(std::launch::async, [&cfg, &stream, &reference, v] {
      return run_variant(cfg, stream, v, reference);
    }));
  }
  std::map<Variant, RunResult> results;
  for (std::size_t i = 0; i < jobs.size(); ++i) results[cfg.variants[i]] = jobs[i].get();

  const std::filesystem::path dir(cfg.out);
  std::filesystem::create_directories(dir);
  std::string ref_csv = "t,ref_value\n";
  for (const auto& r : reference) ref_csv += fmt::format("{},{}\n", r.t, fmt_float(r.value));
  write_file(dir / "reference.csv", ref_csv);
  for (const auto& [v, res] : results) {
    const std::string name = to_string(v);
    write_file(dir / (name + ".csv"), to_csv(res.records));
    const Schedule& s = res.schedule;
    json meta{{"variant", name},       {"T", s.T},
              {"requested_T", s.requested_T}, {"K", s.K},
              {"Q", s.Q},              {"L", s.L},
              {"delta", s.delta},      {"k_ref", cfg.k_ref},
              {"seed", cfg.seed},      {"family", family_name(cfg.family)},
              {"n", stream.polytope().dim()}, {"m", cfg.m},
              {"sigma", cfg.sigma},    {"wall_seconds", res.wall_seconds}};
    write_file(dir / (name + ".meta.json"), meta.dump(2) + "\n");
  }
  return results;
}

GridOptimum brute_force_opt(const Objective& f, const DownClosedPolytope& P, double step) {
  const int n = P.dim();
  if (n > 4) throw std::invalid_argument(fmt::format("brute_force_opt: n = {} exceeds 4", n));
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("brute_force_opt: step in (0,1]");
  if (f.dim() != n) throw std::invalid_argument("brute_force_opt: dimension mismatch");
  const int per_axis = static_cast<int>(std::floor(1.0 / step + 1e-9)) + 1;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  GridOptimum best{Vector::Zero(n), f.value(Vector::Zero(n))};
  Vector x(n);
  for (;;) {
    for (int j = 0; j < n; ++j) x(j) = std::min(1.0, idx[static_cast<std::size_t>(j)] * step);
    if (contains(P, x, 1e-12)) {
      const double v = f.value(x);
      if (v > best.value) best = GridOptimum{x, v};
    }
    int j = 0;
    while (j < n && ++idx[static_cast<std::size_t>(j)] == per_axis) {
      idx[static_cast<std::size_t>(j)] = 0;
      ++j;
    }
    if (j == n) break;
  }
  return best;
}

std::vector<ReportRow> report(const std::vector<std::string>& csv_paths) {
  std::vector<ReportRow> rows;
  for (const auto& path : csv_paths) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("report: cannot open '{}'", path));
    std::stringstream buf;
    buf << in.rdbuf();
    const auto records = parse_csv(buf.str());
    ReportRow row;
    std::filesystem::path p(path);
    row.variant = p.stem().string();
    if (!records.empty()) {
      row.T = records.back().t;
      row.grad_calls = records.back().grad_calls;
      row.value_calls = records.back().value_calls;
      for (auto it = records.rbegin(); it != records.rend(); ++it) {
        if (it->ratio) {
          row.final_ratio = it->ratio;
          break;
        }
      }
    }
    const auto meta_path = p.parent_path() / (p.stem().string() + ".meta.json");
    if (std::ifstream meta_in(meta_path); meta_in) {
      try {
        const json meta = json::parse(meta_in);
        row.variant = meta.value("variant", row.variant);
        row.T = meta.value("T", row.T);
        if (meta.contains("wall_seconds")) row.wall_seconds = meta.at("wall_seconds").get<double>();
      } catch (const json::exception& e) {
        throw std::runtime_error(fmt::format("report: bad sidecar '{}': {}", meta_path.string(), e.what()));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

json report_to_json(const std::vector<ReportRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"variant", r.variant},
                   {"T", r.T},
                   {"final_ratio", r.final_ratio ? json(*r.final_ratio) : json(nullptr)},
                   {"grad_calls", r.grad_calls},
                   {"value_calls", r.value_calls},
                   {"wall_seconds", r.wall_seconds ? json(*r.wall_seconds) : json(nullptr)}});
  }
  return out;
}

std::string report_table(const std::vector<ReportRow>& rows) {
  std::string out = fmt::format("{:<10} {:>6} {:>14} {:>12} {:>12} {:>10}\n", "variant", "T",
                                "final_ratio", "grad_calls", "value_calls", "wall_s");
  for (const auto& r : rows) {
    out += fmt::format("{:<10} {:>6} {:>14} {:>12} {:>12} {:>10}\n", r.variant, r.T,
                       r.final_ratio ? fmt::format("{:.6g}", *r.final_ratio) : "-", r.grad_calls,
                       r.value_calls,
                       r.wall_seconds ? fmt::format("{:.3f}", *r.wall_seconds) : "-");
  }
  return out;
}

}  // namespace mfw
