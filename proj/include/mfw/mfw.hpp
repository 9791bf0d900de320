#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mfw/objective.hpp"
#include "mfw/online_linear.hpp"
#include "mfw/oracles.hpp"
#include "mfw/polytope.hpp"

namespace mfw {

/// x + (1/K) v .* (1 - x). Stays in [0,1]^n and never decreases x.
Vector measured_step(const Vector& x, const Vector& v, int K);

/// Momentum weight 2 / (k + 3)^{2/3}, k >= 1.
double eta_meta(int k);

/// Two-phase momentum weight for blocked play: eta_meta(k) for
/// k <= K/2 + 1 and 1.5 / (K - k + 2)^{2/3} afterwards. K must be even.
double eta_mono(int k, int K);

enum class Variant { Meta32, Meta34, Mono, Bandit };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

/// Per-variant horizon split. T is the effective horizon actually played
/// (T = Q*K for Mono, T = Q*L for Bandit, T = Q for Meta with one round per
/// block); requested_T is what the caller asked for.
struct Schedule {
  Variant variant;
  int requested_T;
  int T;
  int K;
  int Q;
  int L;         // rounds per block
  double delta;  // probe radius, Bandit only (0 otherwise)
};

/// Default schedules: Meta32 K = ceil(T^{3/2}); Meta34 K = ceil(T^{3/4});
/// Mono K ~ T^{3/5} even, Q = T/K; Bandit Q ~ T^{2/9}, L = T/Q,
/// K = min(ceil(T^{2/3}), L/2), delta = r / ((sqrt(n)+2) T^{1/9}).
/// Throws ConfigError when no valid split exists.
Schedule make_schedule(int T, Variant variant, const DownClosedPolytope& P);

/// Checks the structural constraints of a (possibly user-overridden) schedule.
void validate_schedule(const Schedule& s, const DownClosedPolytope& P);

/// Inner iterates and momentum vectors of the most recent round or block.
/// iterates[0] is the start point, iterates[k] = x^{(k)}; momenta[k] = g^{(k)}
/// with momenta[0] = 0.
struct InnerTrace {
  std::vector<Vector> iterates;
  std::vector<Vector> momenta;
};

/// Full-information online measured Frank-Wolfe: per round, K oracle
/// directions build the played point by measured steps, then K stochastic
/// gradients feed the momentum-averaged payoffs back to the oracles.
class MetaMfw {
 public:
  MetaMfw(const DownClosedPolytope& domain, int K, int T);

  /// One round against f_t: returns the played point y_t = x^{(K)}.
  /// Exactly K gradient queries.
  Vector round(StochasticGradientOracle& grad_oracle);

  int K() const { return K_; }
  int rounds_played() const { return round_; }
  const InnerTrace& last_trace() const { return trace_; }
  const OracleBank& bank() const { return bank_; }

 private:
  OracleBank bank_;
  int K_;
  int T_;
  int round_ = 0;
  InnerTrace trace_;
};

/// One-shot blocked variant: each reward function receives exactly one
/// gradient query, assigned by a random permutation of the block.
class MonoMfw {
 public:
  MonoMfw(const DownClosedPolytope& domain, int K, int Q, std::uint64_t seed);

  /// Plays one block of K rounds; block_oracles[i] belongs to the i-th
  /// function of the block. Returns the K played points (all equal).
  std::vector<Vector> block(std::span<StochasticGradientOracle> block_oracles);

  int K() const { return K_; }
  int blocks_played() const { return block_; }
  const InnerTrace& last_trace() const { return trace_; }
  /// permutation()[k-1] = index within the block queried at step k.
  const std::vector<int>& last_permutation() const { return perm_; }

 private:
  OracleBank bank_;
  int K_;
  int Q_;
  std::uint64_t seed_;
  int block_ = 0;
  InnerTrace trace_;
  std::vector<int> perm_;
};

struct BanditBlock {
  std::vector<Vector> played;      // L points, in round order
  std::vector<int> explore_step;   // per round: k in [1, K] if exploring, else 0
  std::vector<Vector> probes;      // K exploration points, probes[k-1]
};

/// Bandit variant: only the value of the played point is observed. Each block
/// of L rounds spends K randomly placed rounds probing x^{(k)} + delta u^{(k)}
/// and plays x^{(K)} on the rest. Oracles live on the delta-interior.
class BanditMfw {
 public:
  BanditMfw(const DownClosedPolytope& domain, int K, int L, int Q, double delta,
            std::uint64_t seed);

  /// block_oracles[i] is the value oracle of the i-th function of the block.
  BanditBlock block(std::span<ValueOracle> block_oracles);

  int K() const { return K_; }
  int L() const { return L_; }
  double delta() const { return shrink_.delta; }
  const InteriorShrink& interior() const { return shrink_; }
  int blocks_played() const { return block_; }
  const InnerTrace& last_trace() const { return trace_; }

 private:
  DownClosedPolytope domain_;
  InteriorShrink shrink_;
  OracleBank bank_;
  int K_;
  int L_;
  int Q_;
  std::uint64_t seed_;
  int block_ = 0;
  InnerTrace trace_;
};

/// Offline measured continuous greedy with exact gradients: K measured steps
/// from 0 along LP vertices of grad f(x) .* (1 - x).
Vector offline_measured_greedy(const Objective& f, const DownClosedPolytope& P, int K);

}  // namespace mfw
