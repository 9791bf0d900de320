#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace mfw {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// The feasible region {x >= 0 : Ax <= b, x <= u} with A >= 0, b >= 0 and
/// 0 < u <= 1. Zero is always feasible and the set is down-closed.
/// Immutable after construction.
class DownClosedPolytope {
 public:
  DownClosedPolytope(Matrix A, Vector b, Vector u);

  /// The box [0, u] with no extra rows.
  static DownClosedPolytope Box(Vector u);
  static DownClosedPolytope UnitBox(int n) { return Box(Vector::Ones(n)); }

  int dim() const { return static_cast<int>(u_.size()); }
  int rows() const { return static_cast<int>(b_.size()); }
  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  const Vector& u() const { return u_; }

 private:
  Matrix A_;
  Vector b_;
  Vector u_;
};

/// True iff x >= -tol, x <= u + tol and Ax <= b + tol componentwise.
bool contains(const DownClosedPolytope& P, const Vector& x, double tol);

/// Exact LP: a vertex maximizing <c, x> over P. Dense primal simplex with
/// Bland's rule; c = 0 returns the zero vertex.
Vector linear_maximize(const DownClosedPolytope& P, const Vector& c);

/// Working set of a previous projection, used to warm start the next one.
/// Constraint ids: rows of A are 0..m-1, x_j <= u_j is m + j, x_j >= 0 is
/// m + n + j.
struct ProjectionWarmStart {
  Vector x;
  std::vector<int> working;

  bool empty() const { return x.size() == 0; }
};

/// Euclidean projection of z onto P by a primal active-set method. Exact up
/// to rounding; tol bounds the most negative KKT multiplier accepted.
Vector project(const DownClosedPolytope& P, const Vector& z, double tol);

/// Same as project(), starting from (and updating) a warm start.
Vector project_warm(const DownClosedPolytope& P, const Vector& z, double tol,
                    ProjectionWarmStart& warm);

/// Largest r such that the nonnegative part of the r-ball is inside P:
/// min(min_j u_j, min_i b_i / ||a_i||) over rows with a_i != 0.
double inner_radius(const DownClosedPolytope& P);

struct RadiusDiameter {
  double radius;    // max_{x in P} ||x||
  double diameter;  // max_{x,y in P} ||x - y||
};

/// Vertex-sampling estimates of r(P) and diam(P): both are attained at
/// vertices and are bounded by ||u||. Deterministic.
RadiusDiameter radius_diameter_bounds(const DownClosedPolytope& P);

/// The scaled-and-shifted region {scale * x + offset * 1 : x in base}.
/// scale = 1, offset = 0 is the polytope itself.
class AffineRegion {
 public:
  explicit AffineRegion(DownClosedPolytope base, double scale = 1.0, double offset = 0.0);

  const DownClosedPolytope& base() const { return base_; }
  double scale() const { return scale_; }
  double offset() const { return offset_; }
  int dim() const { return base_.dim(); }

  Vector to_outer(const Vector& x) const;
  Vector from_outer(const Vector& y) const;
  /// Image of the zero vertex.
  Vector origin() const;

  bool contains(const Vector& y, double tol) const;
  Vector linear_maximize(const Vector& c) const;
  Vector project(const Vector& z, double tol, ProjectionWarmStart& warm) const;
  double diameter() const;

 private:
  DownClosedPolytope base_;
  double scale_;
  double offset_;
  double base_diameter_;
};

/// The delta-interior C' = (1 - alpha) C + delta * 1, with
/// alpha = (sqrt(n) + 1) delta / r. Every point of C' keeps its delta-ball
/// inside C.
struct InteriorShrink {
  DownClosedPolytope base;
  double delta;
  double alpha;
  double radius;  // inner radius r of base

  AffineRegion region() const { return AffineRegion(base, 1.0 - alpha, delta); }
  Vector map(const Vector& x) const;
};

/// Throws std::invalid_argument unless 0 < delta < r / (sqrt(n) + 1).
InteriorShrink shrink_interior(const DownClosedPolytope& P, double delta);

/// {"n":..,"A":[[..]],"b":[..],"u":[..]} with 17 significant digits.
std::string to_json(const DownClosedPolytope& P);
DownClosedPolytope polytope_from_json(const std::string& text);

}  // namespace mfw
