#pragma once

#include <memory>

#include "mfw/polytope.hpp"

namespace mfw {

/// A reward function on [0,1]^n with exact value and gradient.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual int dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
};

using ObjectivePtr = std::shared_ptr<const Objective>;

}  // namespace mfw
