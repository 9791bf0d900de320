#include "mfw/mfw.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "mfw/errors.hpp"
#include "mfw/rng.hpp"

namespace mfw {

namespace {

constexpr double kUnitTol = 1e-9;
constexpr double kProbeTol = 1e-9;

bool in_unit_cube(const Vector& x) {
  return (x.array() >= -kUnitTol).all() && (x.array() <= 1.0 + kUnitTol).all();
}

// ceil() that ignores floating noise on exact powers, e.g. 32^{3/5} = 8.
int ceil_power(double x) { return static_cast<int>(std::ceil(x - 1e-9 * std::max(1.0, x))); }

// Fisher-Yates over 0..size-1; portable because it only uses raw draws.
std::vector<int> permutation(int size, CounterRng rng) {
  std::vector<int> p(static_cast<std::size_t>(size));
  std::iota(p.begin(), p.end(), 0);
  for (int i = size - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  }
  return p;
}

// Divisor of T closest to target in log-ratio, if within a factor 1.5;
// otherwise 0. With even_only, only even divisors qualify.
int nearby_divisor(int T, double target, bool even_only) {
  int best = 0;
  double best_dist = std::log(1.5) + 1e-12;
  for (int d = 1; d <= T; ++d) {
    if (T % d != 0 || (even_only && d % 2 != 0)) continue;
    const double dist = std::abs(std::log(d / target));
    if (dist < best_dist) {
      best_dist = dist;
      best = d;
    }
  }
  return best;
}

Vector complement(const Vector& x) { return (1.0 - x.array()).matrix(); }

}  // namespace

Vector measured_step(const Vector& x, const Vector& v, int K) {
  if (K < 1) throw std::invalid_argument("measured_step: K must be >= 1");
  if (x.size() != v.size()) throw std::invalid_argument("measured_step: dimension mismatch");
  if (!in_unit_cube(x) || !in_unit_cube(v)) {
    throw std::invalid_argument("measured_step: x and v must lie in [0,1]^n");
  }
  return x + (v.array() * (1.0 - x.array())).matrix() / static_cast<double>(K);
}

double eta_meta(int k) {
  if (k < 1) throw std::invalid_argument("eta_meta: k must be >= 1");
  return 2.0 / std::pow(k + 3.0, 2.0 / 3.0);
}

double eta_mono(int k, int K) {
  if (K < 2 || K % 2 != 0) {
    throw std::invalid_argument(fmt::format("eta_mono: K = {} must be even", K));
  }
  if (k < 1 || k > K) throw std::invalid_argument("eta_mono: k outside [1, K]");
  if (k <= K / 2 + 1) return eta_meta(k);
  return 1.5 / std::pow(K - k + 2.0, 2.0 / 3.0);
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Meta32:
      return "meta32";
    case Variant::Meta34:
      return "meta34";
    case Variant::Mono:
      return "mono";
    case Variant::Bandit:
      return "bandit";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "meta32") return Variant::Meta32;
  if (name == "meta34") return Variant::Meta34;
  if (name == "mono") return Variant::Mono;
  if (name == "bandit") return Variant::Bandit;
  throw ConfigError(
      fmt::format("unknown variant '{}' (expected meta32|meta34|mono|bandit)", name));
}

Schedule make_schedule(int T, Variant variant, const DownClosedPolytope& P) {
  if (T < 1) throw ConfigError(fmt::format("horizon T = {} must be >= 1", T));
  Schedule s{variant, T, T, 1, T, 1, 0.0};
  const double Td = T;
  switch (variant) {
    case Variant::Meta32:
      s.K = ceil_power(std::pow(Td, 1.5));
      break;
    case Variant::Meta34:
      s.K = ceil_power(std::pow(Td, 0.75));
      break;
    case Variant::Mono: {
      if (T < 2) throw ConfigError("mono needs T >= 2 (nearest valid T is 2)");
      const double target = std::pow(Td, 0.6);
      int K = nearby_divisor(T, target, true);
      if (K == 0) {
        K = 2 * static_cast<int>(std::lround(target / 2.0));
        K = std::clamp(K, 2, T - T % 2);
      }
      s.K = K;
      s.Q = T / K;
      s.L = K;
      s.T = s.Q * K;
      break;
    }
    case Variant::Bandit: {
      if (T < 2) throw ConfigError("bandit needs T >= 2 (nearest valid T is 2)");
      const double target = std::pow(Td, 2.0 / 9.0);
      int Q = nearby_divisor(T, target, false);
      if (Q == 0) Q = std::max(1, static_cast<int>(std::lround(target)));
      s.Q = Q;
      s.L = T / Q;
      s.T = s.L * Q;
      s.K = std::min(ceil_power(std::pow(Td, 2.0 / 3.0)), s.L / 2);
      if (s.K < 1) {
        throw ConfigError(fmt::format("bandit: no valid split of T = {}; try T = {}", T, 2 * Q));
      }
      const double r = inner_radius(P);
      const double root_n = std::sqrt(static_cast<double>(P.dim()));
      s.delta = r / ((root_n + 2.0) * std::pow(static_cast<double>(s.T), 1.0 / 9.0));
      const double bound = r / (root_n + 1.0);
      if (!(s.delta < bound)) s.delta = 0.99 * bound;
      break;
    }
  }
  validate_schedule(s, P);
  return s;
}

void validate_schedule(const Schedule& s, const DownClosedPolytope& P) {
  if (s.K < 1 || s.Q < 1 || s.L < 1) throw ConfigError("schedule: K, Q, L must be >= 1");
  switch (s.variant) {
    case Variant::Meta32:
    case Variant::Meta34:
      if (s.Q != s.T || s.L != 1) throw ConfigError("schedule: meta plays one round per block");
      break;
    case Variant::Mono:
      if (s.K % 2 != 0) throw ConfigError(fmt::format("schedule: mono K = {} must be even", s.K));
      if (s.K * s.Q != s.T || s.L != s.K) throw ConfigError("schedule: mono needs T = Q*K");
      break;
    case Variant::Bandit: {
      if (s.L * s.Q != s.T) throw ConfigError("schedule: bandit needs T = Q*L");
      if (2 * s.K > s.L) {
        throw ConfigError(fmt::format("schedule: bandit needs L >= 2K (L = {}, K = {})", s.L, s.K));
      }
      const double bound = inner_radius(P) / (std::sqrt(static_cast<double>(P.dim())) + 1.0);
      if (!(s.delta > 0.0 && s.delta < bound)) {
        throw ConfigError(
            fmt::format("schedule: delta = {} must lie in (0, r/(sqrt(n)+1) = {})", s.delta, bound));
      }
      break;
    }
  }
}

MetaMfw::MetaMfw(const DownClosedPolytope& domain, int K, int T)
    : bank_(AffineRegion(domain), K, T), K_(K), T_(T) {}

Vector MetaMfw::round(StochasticGradientOracle& grad_oracle) {
  if (round_ >= T_) throw std::logic_error("MetaMfw: horizon exhausted");
  const int n = bank_.domain().dim();
  trace_.iterates.assign(1, Vector::Zero(n));
  for (int k = 1; k <= K_; ++k) {
    trace_.iterates.push_back(measured_step(trace_.iterates.back(), bank_.get_action(k - 1), K_));
  }

  trace_.momenta.assign(1, Vector::Zero(n));
  for (int k = 1; k <= K_; ++k) {
    const Vector& x = trace_.iterates[static_cast<std::size_t>(k)];
    const double eta = eta_meta(k);
    Vector g = (1.0 - eta) * trace_.momenta.back() + eta * grad_oracle.query(x);
    bank_.feed_payoff_vector(k - 1, (g.array() * (1.0 - x.array())).matrix());
    trace_.momenta.push_back(std::move(g));
  }
  ++round_;
  return trace_.iterates.back();
}

MonoMfw::MonoMfw(const DownClosedPolytope& domain, int K, int Q, std::uint64_t seed)
    : bank_(AffineRegion(domain), K, Q), K_(K), Q_(Q), seed_(seed) {
  if (K < 2 || K % 2 != 0) throw std::invalid_argument("MonoMfw: K must be even");
}

std::vector<Vector> MonoMfw::block(std::span<StochasticGradientOracle> block_oracles) {
  if (block_ >= Q_) throw std::logic_error("MonoMfw: all blocks played");
  if (static_cast<int>(block_oracles.size()) != K_) {
    throw std::invalid_argument(
        fmt::format("MonoMfw: block has {} functions, expected K = {}", block_oracles.size(), K_));
  }
  const int n = bank_.domain().dim();
  trace_.iterates.assign(1, Vector::Zero(n));
  for (int k = 1; k <= K_; ++k) {
    trace_.iterates.push_back(measured_step(trace_.iterates.back(), bank_.get_action(k - 1), K_));
  }
  perm_ = permutation(K_, CounterRng::Stream(seed_, {kTagPermutation,
                                                     static_cast<std::uint64_t>(block_)}));

  trace_.momenta.assign(1, Vector::Zero(n));
  for (int k = 1; k <= K_; ++k) {
    const Vector& x = trace_.iterates[static_cast<std::size_t>(k)];
    auto& oracle = block_oracles[static_cast<std::size_t>(perm_[static_cast<std::size_t>(k - 1)])];
    const double eta = eta_mono(k, K_);
    Vector g = (1.0 - eta) * trace_.momenta.back() + eta * oracle.query(x);
    bank_.feed_payoff_vector(k - 1, (complement(x).array() * g.array()).matrix());
    trace_.momenta.push_back(std::move(g));
  }
  ++block_;
  return std::vector<Vector>(static_cast<std::size_t>(K_), trace_.iterates.back());
}

BanditMfw::BanditMfw(const DownClosedPolytope& domain, int K, int L, int Q, double delta,
                     std::uint64_t seed)
    : domain_(domain),
      shrink_(shrink_interior(domain, delta)),
      bank_(shrink_.region(), K, Q),
      K_(K),
      L_(L),
      Q_(Q),
      seed_(seed) {
  if (2 * K > L) throw std::invalid_argument("BanditMfw: need L >= 2K");
}

BanditBlock BanditMfw::block(std::span<ValueOracle> block_oracles) {
  if (block_ >= Q_) throw std::logic_error("BanditMfw: all blocks played");
  if (static_cast<int>(block_oracles.size()) != L_) {
    throw std::invalid_argument(
        fmt::format("BanditMfw: block has {} functions, expected L = {}", block_oracles.size(), L_));
  }
  const int n = domain_.dim();
  const double delta = shrink_.delta;
  const auto q = static_cast<std::uint64_t>(block_);

  trace_.iterates.assign(1, Vector::Constant(n, delta));
  for (int k = 1; k <= K_; ++k) {
    // Pull the oracle action from C' back to C.
    const Vector v = ((bank_.get_action(k - 1).array() - delta) / (1.0 - delta)).cwiseMax(0.0);
    trace_.iterates.push_back(measured_step(trace_.iterates.back(), v, K_));
  }
  const Vector& exploit = trace_.iterates.back();

  const std::vector<int> perm = permutation(L_, CounterRng::Stream(seed_, {kTagPermutation, q}));
  BanditBlock out;
  out.played.assign(static_cast<std::size_t>(L_), exploit);
  out.explore_step.assign(static_cast<std::size_t>(L_), 0);
  std::vector<SphereSample> dirs;
  dirs.reserve(static_cast<std::size_t>(K_));
  for (int k = 1; k <= K_; ++k) {
    auto rng = CounterRng::Stream(seed_, {kTagSphere, q, static_cast<std::uint64_t>(k)});
    dirs.push_back(sample_sphere(n, rng));
    Vector probe = trace_.iterates[static_cast<std::size_t>(k)] + delta * dirs.back().v;
    if (!contains(domain_, probe, kProbeTol)) {
      throw ProbeInfeasible(fmt::format(
          "bandit block {}: probe {} left the feasible region (delta = {})", block_, k, delta));
    }
    const auto slot = static_cast<std::size_t>(perm[static_cast<std::size_t>(k - 1)]);
    out.played[slot] = probe;
    out.explore_step[slot] = k;
    out.probes.push_back(std::move(probe));
  }

  trace_.momenta.assign(1, Vector::Zero(n));
  for (int k = 1; k <= K_; ++k) {
    const Vector& x = trace_.iterates[static_cast<std::size_t>(k)];
    auto& oracle = block_oracles[static_cast<std::size_t>(perm[static_cast<std::size_t>(k - 1)])];
    const double eta = eta_meta(k);
    const Vector est = one_point_estimate(oracle, x, delta, dirs[static_cast<std::size_t>(k - 1)]);
    Vector g = (1.0 - eta) * trace_.momenta.back() + eta * est;
    const Vector x_tilde = ((x.array() - delta) / (1.0 - delta)).matrix();
    bank_.feed_payoff_vector(k - 1, (complement(x_tilde).array() * g.array()).matrix());
    trace_.momenta.push_back(std::move(g));
  }
  ++block_;
  return out;
}

Vector offline_measured_greedy(const Objective& f, const DownClosedPolytope& P, int K) {
  if (K < 1) throw std::invalid_argument("offline_measured_greedy: K must be >= 1");
  Vector x = Vector::Zero(P.dim());
  for (int k = 1; k <= K; ++k) {
    const Vector weighted = (f.gradient(x).array() * (1.0 - x.array())).matrix();
    x = measured_step(x, linear_maximize(P, weighted), K);
  }
  return x;
}

}  // namespace mfw
