#pragma once

#include <vector>

#include "mfw/polytope.hpp"

namespace mfw {

/// K independent online linear-maximization oracles, each running projected
/// online gradient ascent over the same region:
///
///   v <- Proj(v + eta * d),  eta = D / (G_hat * sqrt(T)),
///
/// where D is the region's diameter, T the number of feeds the oracle will
/// see, and G_hat the running max of ||d|| (floored at 1e-8). This meets the
/// O(sqrt(t)) regret the algorithms assume of their linear oracles.
///
/// Oracles never read each other's state: feeds to distinct indices may run
/// concurrently, feeds to one index must be serialized.
class OracleBank {
 public:
  OracleBank(AffineRegion domain, int K, int T);

  int size() const { return static_cast<int>(oracles_.size()); }
  int horizon() const { return horizon_; }
  const AffineRegion& domain() const { return domain_; }

  /// Current action of oracle k (0-based). Does not advance state.
  const Vector& get_action(int k) const;

  /// One projected ascent step of oracle k on payoff vector d.
  void feed_payoff_vector(int k, const Vector& d);

  /// Step size the next feed of d to oracle k would use.
  double step_size(int k, const Vector& d) const;
  int rounds(int k) const;

 private:
  struct State {
    Vector action;
    ProjectionWarmStart warm;
    double grad_scale = 1e-8;
    int rounds = 0;
  };

  const State& at(int k) const;

  AffineRegion domain_;
  int horizon_;
  double diameter_;
  std::vector<State> oracles_;
};

}  // namespace mfw
