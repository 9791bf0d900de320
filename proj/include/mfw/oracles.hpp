#pragma once

#include <cstdint>
#include <random>

#include "mfw/objective.hpp"
#include "mfw/rng.hpp"

namespace mfw {

/// Unbiased gradient oracle: grad f(x) + sigma * z with z i.i.d. N(0, 1)
/// per coordinate. Counts every query.
class StochasticGradientOracle {
 public:
  StochasticGradientOracle(ObjectivePtr objective, double sigma, CounterRng rng);

  Vector query(const Vector& x);

  double sigma() const { return sigma_; }
  std::uint64_t call_count() const { return calls_; }
  const Objective& objective() const { return *objective_; }

 private:
  ObjectivePtr objective_;
  double sigma_;
  CounterRng rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uint64_t calls_ = 0;
};

/// Bandit feedback: the reward at a point and nothing else.
class ValueOracle {
 public:
  explicit ValueOracle(ObjectivePtr objective);

  double query(const Vector& x);

  std::uint64_t call_count() const { return calls_; }
  const Objective& objective() const { return *objective_; }

 private:
  ObjectivePtr objective_;
  std::uint64_t calls_ = 0;
};

/// A point on the unit sphere S^{n-1}.
struct SphereSample {
  Vector v;
};

/// Uniform on S^{n-1} by normalizing a standard Gaussian vector.
SphereSample sample_sphere(int n, CounterRng& rng);

/// Uniform in the unit ball B^n: a sphere sample scaled by U^{1/n}.
Vector sample_ball(int n, CounterRng& rng);

/// (n / delta) * f(x + delta u) * u, one value query. An unbiased estimate of
/// the gradient of the delta-smoothed f(x) = E_{v ~ B^n} f(x + delta v).
/// The probe point must lie in [0,1]^n.
Vector one_point_estimate(ValueOracle& oracle, const Vector& x, double delta,
                          const SphereSample& u);

}  // namespace mfw
