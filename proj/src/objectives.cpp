#include "mfw/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace mfw {

QuadraticObjective::QuadraticObjective(Matrix H, Vector h, double c)
    : H_(std::move(H)), h_(std::move(h)), c_(c) {
  if (H_.rows() != H_.cols() || H_.rows() != h_.size()) {
    throw std::invalid_argument("QuadraticObjective: H must be n x n with n = |h|");
  }
  const double scale = std::max(1.0, H_.cwiseAbs().maxCoeff());
  if ((H_ - H_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("QuadraticObjective: H must be symmetric");
  }
  if ((H_.array() > 0.0).any()) {
    throw std::invalid_argument("QuadraticObjective: H must be entrywise nonpositive");
  }
}

double QuadraticObjective::value(const Vector& x) const {
  return 0.5 * x.dot(H_ * x) + h_.dot(x) + c_;
}

Vector QuadraticObjective::gradient(const Vector& x) const { return H_ * x + h_; }

double QuadraticObjective::smoothness() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(H_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

QuadraticObjective& QuadraticObjective::operator+=(const QuadraticObjective& other) {
  if (other.dim() != dim()) throw std::invalid_argument("QuadraticObjective: dimension mismatch");
  H_ += other.H_;
  h_ += other.h_;
  c_ += other.c_;
  return *this;
}

RevenueObjective::RevenueObjective(Matrix W, double p, double budget)
    : W_(std::move(W)), p_(p), budget_(budget), log_q_(std::log1p(-p)) {
  if (W_.rows() != W_.cols()) throw std::invalid_argument("RevenueObjective: W must be square");
  if (!(p_ > 0.0 && p_ < 1.0)) throw std::invalid_argument("RevenueObjective: p must be in (0,1)");
  if (!(budget_ > 0.0)) throw std::invalid_argument("RevenueObjective: budget must be > 0");
  if ((W_.array() < 0.0).any()) throw std::invalid_argument("RevenueObjective: W must be >= 0");
  W_.diagonal().setZero();
}

double RevenueObjective::value(const Vector& x) const {
  // s_j = q^{x_j B} (not yet an advocate), a_i = 1 - s_i.
  const Vector s = (budget_ * log_q_ * x.array()).exp().matrix();
  const Vector a = (1.0 - s.array()).matrix();
  return a.dot(W_ * s);
}

Vector RevenueObjective::gradient(const Vector& x) const {
  // d/dx_k: own adoption  -B ln q s_k (W s)_k, exposure  +B ln q s_k (W' a)_k.
  const Vector s = (budget_ * log_q_ * x.array()).exp().matrix();
  const Vector a = (1.0 - s.array()).matrix();
  const Vector own = W_ * s;
  const Vector exposure = W_.transpose() * a;
  return (-budget_ * log_q_ * s.array() * (own - exposure).array()).matrix();
}

double RevenueObjective::smoothness_bound() const {
  return budget_ * budget_ * log_q_ * log_q_ * W_.sum();
}

RevenueObjective& RevenueObjective::operator+=(const RevenueObjective& other) {
  if (other.dim() != dim() || other.p_ != p_ || other.budget_ != budget_) {
    throw std::invalid_argument("RevenueObjective: can only add rewards with equal n, p, B");
  }
  W_ += other.W_;
  return *this;
}

Graph parse_graph(const std::string& text) {
  std::unordered_map<long long, int> ids;
  auto id_of = [&](long long raw) {
    auto [it, inserted] = ids.try_emplace(raw, static_cast<int>(ids.size()));
    return it->second;
  };
  std::vector<std::pair<int, int>> edges;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest)) {
      throw std::runtime_error(fmt::format("graph: malformed edge on line {}: '{}'", lineno, line));
    }
    const int a = id_of(u);
    const int b = id_of(v);
    if (a == b) continue;
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph{static_cast<int>(ids.size()), std::move(edges)};
}

Graph load_graph(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error(fmt::format("graph: cannot open '{}'", path));
  std::stringstream buf;
  buf << file.rdbuf();
  return parse_graph(buf.str());
}

DownClosedPolytope gen_constraints(int n, int m, CounterRng& rng) {
  if (n < 1 || m < 0) throw std::invalid_argument("gen_constraints: need n >= 1, m >= 0");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix A(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = unif(rng);
  }
  return DownClosedPolytope(std::move(A), Vector::Ones(m), Vector::Ones(n));
}

namespace {

// f >= 0 on [0,1]^n, sampled at the corners 0 and 1 plus random points.
bool sampled_nonnegative(const QuadraticObjective& f, CounterRng& rng) {
  const int n = f.dim();
  if (f.value(Vector::Zero(n)) < 0.0 || f.value(Vector::Ones(n)) < 0.0) return false;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector x(n);
  for (int s = 0; s < 64; ++s) {
    for (int j = 0; j < n; ++j) x(j) = unif(rng);
    if (f.value(x) < 0.0) return false;
  }
  return true;
}

}  // namespace

QuadraticObjective gen_quadratic_objective(int n, CounterRng& rng) {
  if (n < 1) throw std::invalid_argument("gen_quadratic_objective: n must be >= 1");
  std::uniform_real_distribution<double> unif(-10.0, 0.0);
  for (;;) {
    Matrix M(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) M(i, j) = unif(rng);
    }
    Matrix H = 0.5 * (M + M.transpose());
    Vector h = -0.1 * H.transpose() * Vector::Ones(n);
    const double c = -0.5 * H.sum();
    QuadraticObjective f(std::move(H), std::move(h), c);
    if (sampled_nonnegative(f, rng)) return f;
    fmt::print(stderr, "gen_quadratic_objective: negative value sampled, regenerating\n");
  }
}

std::pair<QuadraticObjective, DownClosedPolytope> gen_quadratic(int n, int m, CounterRng& rng) {
  if (m < 1) throw std::invalid_argument("gen_quadratic: m must be >= 1");
  QuadraticObjective f = gen_quadratic_objective(n, rng);
  DownClosedPolytope P = gen_constraints(n, m, rng);
  return {std::move(f), std::move(P)};
}

DownClosedPolytope gen_revenue_constraints(int n, int m, CounterRng& rng) {
  const DownClosedPolytope base = gen_constraints(n, m, rng);
  Matrix A(m + 1, n);
  A.topRows(m) = base.A();
  A.row(m).setOnes();
  return DownClosedPolytope(std::move(A), Vector::Ones(m + 1), Vector::Ones(n));
}

RevenueObjective sample_round_objective(const Graph& g, CounterRng& rng,
                                        const RevenueParams& params) {
  if (g.vertices < params.select) {
    throw std::invalid_argument(fmt::format("sample_round_objective: graph has {} vertices, need {}",
                                            g.vertices, params.select));
  }
  // Partial Fisher-Yates: the first `select` slots are a uniform subset.
  std::vector<int> ids(static_cast<std::size_t>(g.vertices));
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<char> chosen(static_cast<std::size_t>(g.vertices), 0);
  for (int i = 0; i < params.select; ++i) {
    const auto span = static_cast<std::uint64_t>(g.vertices - i);
    const auto j = i + static_cast<int>(rng() % span);
    std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)]);
    chosen[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])] = 1;
  }
  Matrix W = Matrix::Zero(g.vertices, g.vertices);
  for (const auto& [u, v] : g.edges) {
    if (chosen[static_cast<std::size_t>(u)] && chosen[static_cast<std::size_t>(v)]) {
      W(u, v) = params.weight;
      W(v, u) = params.weight;
    }
  }
  return RevenueObjective(std::move(W), params.p, params.budget);
}

}  // namespace mfw
