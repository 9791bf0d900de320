#include "mfw/online_linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace mfw {

namespace {

constexpr double kGradFloor = 1e-8;
constexpr double kProjectionTol = 1e-10;

}  // namespace

OracleBank::OracleBank(AffineRegion domain, int K, int T)
    : domain_(std::move(domain)), horizon_(T), diameter_(domain_.diameter()) {
  if (K < 1) throw std::invalid_argument("OracleBank: K must be >= 1");
  if (T < 1) throw std::invalid_argument("OracleBank: T must be >= 1");
  oracles_.resize(static_cast<std::size_t>(K));
  for (State& s : oracles_) s.action = domain_.origin();
}

const OracleBank::State& OracleBank::at(int k) const {
  if (k < 0 || k >= size()) {
    throw std::out_of_range(fmt::format("OracleBank: index {} outside [0, {})", k, size()));
  }
  return oracles_[static_cast<std::size_t>(k)];
}

const Vector& OracleBank::get_action(int k) const { return at(k).action; }

int OracleBank::rounds(int k) const { return at(k).rounds; }

double OracleBank::step_size(int k, const Vector& d) const {
  const double g = std::max(at(k).grad_scale, d.norm());
  return diameter_ / (g * std::sqrt(static_cast<double>(horizon_)));
}

void OracleBank::feed_payoff_vector(int k, const Vector& d) {
  const State& cur = at(k);
  if (d.size() != cur.action.size()) {
    throw std::invalid_argument(fmt::format("OracleBank: payoff dimension {} != {}", d.size(),
                                            cur.action.size()));
  }
  if (!d.allFinite()) throw std::invalid_argument("OracleBank: non-finite payoff vector");
  const double eta = step_size(k, d);
  State& s = oracles_[static_cast<std::size_t>(k)];
  s.grad_scale = std::max({s.grad_scale, d.norm(), kGradFloor});
  if (d.squaredNorm() > 0.0) {
    s.action = domain_.project(s.action + eta * d, kProjectionTol, s.warm);
  }
  ++s.rounds;
}

}  // namespace mfw
