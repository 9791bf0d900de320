#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace mfw {

/// Invalid experiment configuration or schedule (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to reach its tolerance (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simplex hit its pivot cap. Carries the last basic feasible solution.
class LpNonConvergence : public NumericalError {
 public:
  LpNonConvergence(const std::string& what, Eigen::VectorXd incumbent)
      : NumericalError(what), incumbent_(std::move(incumbent)) {}
  const Eigen::VectorXd& incumbent() const { return incumbent_; }

 private:
  Eigen::VectorXd incumbent_;
};

/// The active-set projection hit its iteration cap (degenerate cycling).
class ProjectionNonConvergence : public NumericalError {
 public:
  ProjectionNonConvergence(const std::string& what, double residual, Eigen::VectorXd incumbent)
      : NumericalError(what), residual_(residual), incumbent_(std::move(incumbent)) {}
  /// Norm of the last search direction.
  double residual() const { return residual_; }
  const Eigen::VectorXd& incumbent() const { return incumbent_; }

 private:
  double residual_;
  Eigen::VectorXd incumbent_;
};

/// A bandit probe point fell outside the feasible region. Indicates a
/// schedule bug: the delta-interior construction rules this out.
class ProbeInfeasible : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace mfw
