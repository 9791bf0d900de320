#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mfw/objective.hpp"
#include "mfw/polytope.hpp"
#include "mfw/rng.hpp"

namespace mfw {

/// f(x) = 1/2 x'Hx + h'x + c with symmetric H <= 0 entrywise, so the
/// gradient Hx + h is antitone (DR-submodular).
class QuadraticObjective : public Objective {
 public:
  QuadraticObjective(Matrix H, Vector h, double c);

  int dim() const override { return static_cast<int>(h_.size()); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;

  const Matrix& H() const { return H_; }
  const Vector& h() const { return h_; }
  double c() const { return c_; }

  /// ||H||_2, the smoothness constant.
  double smoothness() const;

  QuadraticObjective& operator+=(const QuadraticObjective& other);

 private:
  Matrix H_;
  Vector h_;
  double c_;
};

/// Expected revenue on a weighted graph:
///   f(x) = sum_i sum_{j != i} w_ij (1 - q^{x_i B}) q^{x_j B},  q = 1 - p.
class RevenueObjective : public Objective {
 public:
  RevenueObjective(Matrix W, double p, double budget);

  int dim() const override { return static_cast<int>(W_.rows()); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;

  const Matrix& W() const { return W_; }
  double p() const { return p_; }
  double budget() const { return budget_; }

  /// B^2 ln^2(1 - p) * sum(W), an upper bound on the gradient's Lipschitz constant.
  double smoothness_bound() const;

  /// The objective is linear in W, so sums of same-(p, B) rewards add weights.
  RevenueObjective& operator+=(const RevenueObjective& other);

 private:
  Matrix W_;
  double p_;
  double budget_;
  double log_q_;
};

/// Undirected simple graph on vertices 0..n-1.
struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted, unique
};

/// SNAP-style edge list: "u v" per line, '#' comments, ids relabeled densely
/// in order of first appearance. Self-loops dropped, duplicates merged.
Graph load_graph(const std::string& path);
Graph parse_graph(const std::string& text);

/// Random constraint rows: A uniform in [0,1]^{m x n}, b = u = 1.
DownClosedPolytope gen_constraints(int n, int m, CounterRng& rng);

/// H = (M + M')/2 with M uniform in [-10, 0], h = -0.1 H 1, c = -0.5 sum(H).
QuadraticObjective gen_quadratic_objective(int n, CounterRng& rng);

/// One instance of the quadratic family: objective plus constraints.
std::pair<QuadraticObjective, DownClosedPolytope> gen_quadratic(int n, int m, CounterRng& rng);

/// Revenue constraints: A uniform in [0,1]^{m x n} plus the all-ones row,
/// b = u = 1 (so sum x <= 1).
DownClosedPolytope gen_revenue_constraints(int n, int m, CounterRng& rng);

struct RevenueParams {
  int select = 20;
  double weight = 100.0;
  double p = 0.002;
  double budget = 5.0;
};

/// Picks params.select distinct vertices uniformly and weights every graph
/// edge inside the selection by params.weight.
RevenueObjective sample_round_objective(const Graph& g, CounterRng& rng,
                                        const RevenueParams& params = {});

}  // namespace mfw
