#include "mfw/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "mfw/errors.hpp"
#include "mfw/rng.hpp"

namespace mfw {

namespace {

constexpr double kPivotTol = 1e-9;

void require_dim(const DownClosedPolytope& P, const Vector& x, const char* what) {
  if (x.size() != P.dim()) {
    throw std::invalid_argument(
        fmt::format("{}: dimension {} does not match polytope dimension {}", what, x.size(),
                    P.dim()));
  }
}

// Dense tableau simplex for  max c'x  s.t.  [A; I] x <= [b; u],  x >= 0.
// The all-slack basis is feasible because b, u >= 0, so no phase one.
// Bland's rule on both the entering and the leaving choice.
class Tableau {
 public:
  Tableau(const DownClosedPolytope& P, const Vector& c)
      : n_(P.dim()), rows_(P.rows() + P.dim()), cols_(n_ + rows_), t_(rows_ + 1, cols_ + 1),
        basis_(rows_) {
    t_.setZero();
    const int m = P.rows();
    if (m > 0) t_.block(0, 0, m, n_) = P.A();
    for (int j = 0; j < n_; ++j) t_(m + j, j) = 1.0;
    for (int i = 0; i < rows_; ++i) {
      t_(i, n_ + i) = 1.0;
      t_(i, cols_) = i < m ? P.b()(i) : P.u()(i - m);
      basis_[i] = n_ + i;
    }
    t_.row(rows_).head(n_) = -c.transpose();
  }

  // Returns true at optimality, false when the pivot cap is hit.
  bool solve(int max_pivots) {
    for (int it = 0; it < max_pivots; ++it) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (t_(rows_, j) < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = t_(i, cols_) / a;
        const bool tie = leave >= 0 && std::abs(ratio - best_ratio) <= 1e-15;
        if ((!tie && ratio < best_ratio) || (tie && basis_[i] < basis_[leave])) {
          best_ratio = std::min(best_ratio, ratio);
          leave = i;
        }
      }
      // Bounded by x <= u, so the LP is never unbounded.
      if (leave < 0) throw NumericalError("simplex: unbounded direction in a bounded polytope");
      pivot(leave, enter);
    }
    return false;
  }

  Vector solution(const DownClosedPolytope& P) const {
    Vector x = Vector::Zero(n_);
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < n_) x(basis_[i]) = t_(i, cols_);
    }
    return x.cwiseMax(0.0).cwiseMin(P.u());
  }

  int size() const { return rows_ + cols_; }

 private:
  void pivot(int r, int e) {
    t_.row(r) /= t_(r, e);
    for (int i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = t_(i, e);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = e;
  }

  int n_;
  int rows_;
  int cols_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> t_;
  std::vector<int> basis_;
};

}  // namespace

DownClosedPolytope::DownClosedPolytope(Matrix A, Vector b, Vector u)
    : A_(std::move(A)), b_(std::move(b)), u_(std::move(u)) {
  if (u_.size() == 0) throw std::invalid_argument("polytope: dimension must be >= 1");
  if (A_.rows() != b_.size()) throw std::invalid_argument("polytope: A rows != size of b");
  if (A_.rows() > 0 && A_.cols() != u_.size()) {
    throw std::invalid_argument("polytope: A columns != size of u");
  }
  if (A_.rows() == 0) A_.resize(0, u_.size());
  if (!A_.allFinite() || !b_.allFinite() || !u_.allFinite()) {
    throw std::invalid_argument("polytope: non-finite entries");
  }
  if ((A_.array() < 0.0).any()) throw std::invalid_argument("polytope: A must be nonnegative");
  if ((b_.array() < 0.0).any()) throw std::invalid_argument("polytope: b must be nonnegative");
  if ((u_.array() <= 0.0).any() || (u_.array() > 1.0).any()) {
    throw std::invalid_argument("polytope: upper bounds must lie in (0, 1]");
  }
}

DownClosedPolytope DownClosedPolytope::Box(Vector u) {
  const auto n = u.size();
  return DownClosedPolytope(Matrix(0, n), Vector(0), std::move(u));
}

bool contains(const DownClosedPolytope& P, const Vector& x, double tol) {
  require_dim(P, x, "contains");
  if (tol < 0) throw std::invalid_argument("contains: tol must be >= 0");
  if ((x.array() < -tol).any()) return false;
  if (((x - P.u()).array() > tol).any()) return false;
  if (P.rows() > 0 && ((P.A() * x - P.b()).array() > tol).any()) return false;
  return true;
}

Vector linear_maximize(const DownClosedPolytope& P, const Vector& c) {
  require_dim(P, c, "linear_maximize");
  if (!c.allFinite()) throw std::invalid_argument("linear_maximize: non-finite objective");
  if ((c.array() <= 0.0).all()) return Vector::Zero(P.dim());
  if (P.rows() == 0) {
    // Box: the optimum is read off the sign pattern.
    return (c.array() > kPivotTol).select(P.u(), 0.0);
  }
  Tableau tab(P, c);
  const int cap = 50 * tab.size();
  if (!tab.solve(cap)) {
    throw LpNonConvergence(fmt::format("simplex: no optimum after {} pivots", cap),
                           tab.solution(P));
  }
  return tab.solution(P);
}

namespace {

// Constraint i of G x <= h, with G = [A; I; -I] and h = [b; u; 0].
struct Constraints {
  const DownClosedPolytope& P;

  int count() const { return P.rows() + 2 * P.dim(); }

  double dot(int i, const Vector& v) const {
    const int m = P.rows();
    const int n = P.dim();
    if (i < m) return P.A().row(i).dot(v);
    if (i < m + n) return v(i - m);
    return -v(i - m - n);
  }

  double rhs(int i) const {
    const int m = P.rows();
    const int n = P.dim();
    if (i < m) return P.b()(i);
    if (i < m + n) return P.u()(i - m);
    return 0.0;
  }

  Eigen::RowVectorXd row(int i) const {
    const int m = P.rows();
    const int n = P.dim();
    Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(n);
    if (i < m) {
      out = P.A().row(i);
    } else if (i < m + n) {
      out(i - m) = 1.0;
    } else {
      out(i - m - n) = -1.0;
    }
    return out;
  }
};

}  // namespace

Vector project(const DownClosedPolytope& P, const Vector& z, double tol) {
  ProjectionWarmStart warm;
  return project_warm(P, z, tol, warm);
}

Vector project_warm(const DownClosedPolytope& P, const Vector& z, double tol,
                    ProjectionWarmStart& warm) {
  require_dim(P, z, "project");
  if (!(tol > 0)) throw std::invalid_argument("project: tol must be > 0");
  if (!z.allFinite()) throw std::invalid_argument("project: non-finite point");
  const int n = P.dim();

  // The box projection is exact whenever it already satisfies the rows.
  const Vector clipped = z.cwiseMax(0.0).cwiseMin(P.u());
  if (P.rows() == 0 || ((P.A() * clipped - P.b()).array() <= 0.0).all()) {
    warm = ProjectionWarmStart{};
    return clipped;
  }

  const Constraints G{P};
  constexpr double kActiveTol = 1e-9;
  Vector x;
  std::vector<int> working;
  if (!warm.empty() && warm.x.size() == n && contains(P, warm.x, kActiveTol)) {
    x = warm.x;
    for (int i : warm.working) {
      if (i >= 0 && i < G.count() && std::abs(G.rhs(i) - G.dot(i, x)) <= kActiveTol) {
        working.push_back(i);
      }
    }
  } else {
    // Scale the clipped point back into P; down-closedness keeps it feasible.
    const Vector load = P.A() * clipped;
    double t = 1.0;
    for (int i = 0; i < P.rows(); ++i) {
      if (load(i) > P.b()(i)) t = std::min(t, P.b()(i) / load(i));
    }
    x = t * clipped;
  }

  const double scale = 1.0 + z.norm();
  const int cap = 50 * G.count() + 1000;
  Eigen::MatrixXd GW;
  double residual = 0.0;
  for (int it = 0; it < cap; ++it) {
    const Vector r = z - x;
    const int w = static_cast<int>(working.size());
    Vector p = r;
    Vector mu;
    if (w > 0) {
      GW.resize(w, n);
      for (int k = 0; k < w; ++k) GW.row(k) = G.row(working[static_cast<std::size_t>(k)]);
      const Eigen::MatrixXd M = GW * GW.transpose();
      mu = M.ldlt().solve(GW * r);
      p -= GW.transpose() * mu;
    }
    residual = p.norm();
    if (residual <= 1e-11 * scale) {
      // At a stationary point of the working face: x - z + GW' mu = 0.
      int drop = -1;
      double most_negative = -tol;
      for (int k = 0; k < w; ++k) {
        if (mu(k) < most_negative) {
          most_negative = mu(k);
          drop = k;
        }
      }
      if (drop < 0) {
        warm = ProjectionWarmStart{x, working};
        return x;
      }
      working.erase(working.begin() + drop);
      continue;
    }
    double alpha = 1.0;
    int block = -1;
    for (int i = 0; i < G.count(); ++i) {
      if (std::find(working.begin(), working.end(), i) != working.end()) continue;
      const double gp = G.dot(i, p);
      if (gp <= 1e-14 * scale) continue;
      const double step = std::max(0.0, (G.rhs(i) - G.dot(i, x)) / gp);
      if (step < alpha) {
        alpha = step;
        block = i;
      }
    }
    x += alpha * p;
    if (block >= 0) working.push_back(block);
  }
  throw ProjectionNonConvergence(
      fmt::format("project: active set did not settle after {} iterations (|p| = {:.3e})", cap,
                  residual),
      residual, x);
}

double inner_radius(const DownClosedPolytope& P) {
  double r = P.u().minCoeff();
  for (int i = 0; i < P.rows(); ++i) {
    const double norm = P.A().row(i).norm();
    if (norm > 0.0) r = std::min(r, P.b()(i) / norm);
  }
  return r;
}

RadiusDiameter radius_diameter_bounds(const DownClosedPolytope& P) {
  const int n = P.dim();
  std::vector<Vector> verts{Vector::Zero(n)};
  auto add = [&](const Vector& c) { verts.push_back(linear_maximize(P, c)); };
  add(Vector::Ones(n));
  for (int j = 0; j < n; ++j) add(Vector::Unit(n, j));
  auto rng = CounterRng::Stream(0, {kTagDirections, static_cast<std::uint64_t>(n)});
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int s = 0; s < n + 32; ++s) {
    Vector c(n);
    for (int j = 0; j < n; ++j) c(j) = unif(rng);
    add(c);
  }
  RadiusDiameter out{0.0, 0.0};
  for (std::size_t i = 0; i < verts.size(); ++i) {
    out.radius = std::max(out.radius, verts[i].norm());
    for (std::size_t j = 0; j < i; ++j) {
      out.diameter = std::max(out.diameter, (verts[i] - verts[j]).norm());
    }
  }
  return out;
}

AffineRegion::AffineRegion(DownClosedPolytope base, double scale, double offset)
    : base_(std::move(base)), scale_(scale), offset_(offset) {
  if (!(scale_ > 0.0)) throw std::invalid_argument("AffineRegion: scale must be > 0");
  base_diameter_ = radius_diameter_bounds(base_).diameter;
}

Vector AffineRegion::to_outer(const Vector& x) const {
  return (scale_ * x.array() + offset_).matrix();
}

Vector AffineRegion::from_outer(const Vector& y) const {
  return ((y.array() - offset_) / scale_).matrix();
}

Vector AffineRegion::origin() const { return Vector::Constant(dim(), offset_); }

bool AffineRegion::contains(const Vector& y, double tol) const {
  return mfw::contains(base_, from_outer(y), tol / scale_);
}

Vector AffineRegion::linear_maximize(const Vector& c) const {
  return to_outer(mfw::linear_maximize(base_, c));
}

Vector AffineRegion::project(const Vector& z, double tol, ProjectionWarmStart& warm) const {
  // Uniform scaling commutes with Euclidean projection.
  return to_outer(project_warm(base_, from_outer(z), tol / scale_, warm));
}

double AffineRegion::diameter() const { return scale_ * base_diameter_; }

Vector InteriorShrink::map(const Vector& x) const {
  return ((1.0 - alpha) * x.array() + delta).matrix();
}

InteriorShrink shrink_interior(const DownClosedPolytope& P, double delta) {
  const double r = inner_radius(P);
  const double root_n = std::sqrt(static_cast<double>(P.dim()));
  const double bound = r / (root_n + 1.0);
  if (!(delta > 0.0) || !(delta < bound)) {
    throw std::invalid_argument(fmt::format(
        "shrink_interior: delta = {} must satisfy 0 < delta < r/(sqrt(n)+1) = {}", delta,
        bound));
  }
  return InteriorShrink{P, delta, (root_n + 1.0) * delta / r, r};
}

std::string to_json(const DownClosedPolytope& P) {
  auto num = [](double v) { return fmt::format("{:.17g}", v); };
  auto vec = [&](const Vector& v) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += num(v(i));
    }
    return s + "]";
  };
  std::string out = fmt::format("{{\"n\":{},\"A\":[", P.dim());
  for (int i = 0; i < P.rows(); ++i) {
    if (i) out += ",";
    out += vec(P.A().row(i).transpose());
  }
  out += "],\"b\":" + vec(P.b()) + ",\"u\":" + vec(P.u()) + "}";
  return out;
}

DownClosedPolytope polytope_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int n = j.at("n").get<int>();
  const auto rows = j.at("A").get<std::vector<std::vector<double>>>();
  const auto b = j.at("b").get<std::vector<double>>();
  const auto u = j.at("u").get<std::vector<double>>();
  if (static_cast<int>(u.size()) != n) throw std::invalid_argument("polytope json: |u| != n");
  Matrix A(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw std::invalid_argument(fmt::format("polytope json: row {} has wrong length", i));
    }
    for (int k = 0; k < n; ++k) A(static_cast<Eigen::Index>(i), k) = rows[i][k];
  }
  return DownClosedPolytope(std::move(A), Eigen::Map<const Vector>(b.data(), b.size()),
                            Eigen::Map<const Vector>(u.data(), u.size()));
}

}  // namespace mfw
