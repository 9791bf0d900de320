#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mfw/objective.hpp"
#include "mfw/polytope.hpp"
#include "mfw/rng.hpp"

namespace mfw::test {

/// Every vertex of P by brute force: all n-subsets of the constraint set
/// G x <= h (G = [A; I; -I]) with a nonsingular system and a feasible
/// solution. Small n only.
inline std::vector<Vector> enumerate_vertices(const DownClosedPolytope& P) {
  const int n = P.dim();
  const int m = P.rows();
  const int total = m + 2 * n;
  Matrix G(total, n);
  Vector h(total);
  G.setZero();
  if (m > 0) G.topRows(m) = P.A();
  h.head(m) = P.b();
  for (int j = 0; j < n; ++j) {
    G(m + j, j) = 1.0;
    h(m + j) = P.u()(j);
    G(m + n + j, j) = -1.0;
    h(m + n + j) = 0.0;
  }
  std::vector<Vector> out;
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Matrix S(n, n);
      Vector r(n);
      for (int k = 0; k < n; ++k) {
        S.row(k) = G.row(pick[static_cast<std::size_t>(k)]);
        r(k) = h(pick[static_cast<std::size_t>(k)]);
      }
      Eigen::FullPivLU<Matrix> lu(S);
      if (lu.rank() < n) return;
      const Vector x = lu.solve(r);
      if (!contains(P, x, 1e-9)) return;
      for (const auto& v : out) {
        if ((v - x).norm() < 1e-9) return;
      }
      out.push_back(x);
      return;
    }
    for (int i = start; i < total; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

/// Uniform point of the box [0, u], scaled toward 0 until it satisfies the rows.
inline Vector random_feasible(const DownClosedPolytope& P, CounterRng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector x(P.dim());
  for (int j = 0; j < P.dim(); ++j) x(j) = unif(rng) * P.u()(j);
  double t = 1.0;
  if (P.rows() > 0) {
    const Vector load = P.A() * x;
    for (int i = 0; i < P.rows(); ++i) {
      if (load(i) > P.b()(i)) t = std::min(t, P.b()(i) / load(i));
    }
  }
  return t * x;
}

/// Central differences with step h.
inline Vector finite_difference_gradient(const Objective& f, const Vector& x, double h) {
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector up = x;
    Vector down = x;
    up(i) += h;
    down(i) -= h;
    g(i) = (f.value(up) - f.value(down)) / (2.0 * h);
  }
  return g;
}

/// Closed-form objective used across tests.
class LinearObjective : public Objective {
 public:
  explicit LinearObjective(Vector c, double offset = 0.0) : c_(std::move(c)), offset_(offset) {}
  int dim() const override { return static_cast<int>(c_.size()); }
  double value(const Vector& x) const override { return c_.dot(x) + offset_; }
  Vector gradient(const Vector&) const override { return c_; }

 private:
  Vector c_;
  double offset_;
};

}  // namespace mfw::test
