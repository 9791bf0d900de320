#include "mfw/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "mfw/errors.hpp"

namespace mfw {

namespace {

constexpr double kCubeTol = 1e-12;

bool in_unit_cube(const Vector& x) {
  return (x.array() >= -kCubeTol).all() && (x.array() <= 1.0 + kCubeTol).all();
}

}  // namespace

StochasticGradientOracle::StochasticGradientOracle(ObjectivePtr objective, double sigma,
                                                   CounterRng rng)
    : objective_(std::move(objective)), sigma_(sigma), rng_(rng) {
  if (!objective_) throw std::invalid_argument("gradient oracle: null objective");
  if (!(sigma_ >= 0.0)) throw std::invalid_argument("gradient oracle: sigma must be >= 0");
}

Vector StochasticGradientOracle::query(const Vector& x) {
  if (x.size() != objective_->dim()) {
    throw std::invalid_argument("gradient oracle: dimension mismatch");
  }
  if (!in_unit_cube(x)) throw std::domain_error("gradient oracle: x outside [0,1]^n");
  ++calls_;
  Vector g = objective_->gradient(x);
  if (sigma_ > 0.0) {
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) += sigma_ * normal_(rng_);
  }
  return g;
}

ValueOracle::ValueOracle(ObjectivePtr objective) : objective_(std::move(objective)) {
  if (!objective_) throw std::invalid_argument("value oracle: null objective");
}

double ValueOracle::query(const Vector& x) {
  if (x.size() != objective_->dim()) {
    throw std::invalid_argument("value oracle: dimension mismatch");
  }
  if (!in_unit_cube(x)) throw std::domain_error("value oracle: x outside [0,1]^n");
  ++calls_;
  return objective_->value(x);
}

SphereSample sample_sphere(int n, CounterRng& rng) {
  if (n < 1) throw std::invalid_argument("sample_sphere: n must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  double norm = 0.0;
  // Redraw on the measure-zero all-zero draw.
  while (norm == 0.0) {
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
    norm = v.norm();
  }
  return SphereSample{v / norm};
}

Vector sample_ball(int n, CounterRng& rng) {
  SphereSample s = sample_sphere(n, rng);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return std::pow(unif(rng), 1.0 / n) * s.v;
}

Vector one_point_estimate(ValueOracle& oracle, const Vector& x, double delta,
                          const SphereSample& u) {
  if (!(delta > 0.0)) throw std::invalid_argument("one_point_estimate: delta must be > 0");
  const Vector probe = x + delta * u.v;
  if (!in_unit_cube(probe)) {
    throw ProbeInfeasible(
        fmt::format("one_point_estimate: probe point leaves [0,1]^n (delta = {})", delta));
  }
  const double n = static_cast<double>(x.size());
  return (n / delta) * oracle.query(probe) * u.v;
}

}  // namespace mfw
