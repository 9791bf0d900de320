#include <doctest.h>

#include <cmath>
#include <random>

#include "mfw/errors.hpp"
#include "mfw/objectives.hpp"
#include "mfw/oracles.hpp"
#include "mfw/polytope.hpp"
#include "support.hpp"

using namespace mfw;

namespace {

DownClosedPolytope simplex2() {
  Matrix A(1, 2);
  A << 1.0, 1.0;
  return DownClosedPolytope(A, Vector::Ones(1), Vector::Ones(2));
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

DownClosedPolytope random_polytope(int n, int m, std::uint64_t seed) {
  auto rng = CounterRng::Stream(seed, {kTagInstance});
  return gen_constraints(n, m, rng);
}

}  // namespace

TEST_CASE("constructor rejects invalid data") {
  Matrix A(1, 2);
  A << 1.0, -0.5;
  CHECK_THROWS_AS(DownClosedPolytope(A, Vector::Ones(1), Vector::Ones(2)), std::invalid_argument);
  A << 1.0, 1.0;
  CHECK_THROWS_AS(DownClosedPolytope(A, -Vector::Ones(1), Vector::Ones(2)), std::invalid_argument);
  CHECK_THROWS_AS(DownClosedPolytope(A, Vector::Ones(1), vec({1.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(DownClosedPolytope(A, Vector::Ones(1), vec({1.0, 1.5})), std::invalid_argument);
  CHECK_THROWS_AS(DownClosedPolytope(A, Vector::Ones(2), Vector::Ones(2)), std::invalid_argument);
  CHECK_THROWS_AS(DownClosedPolytope(A, Vector::Ones(1), Vector::Ones(3)), std::invalid_argument);
}

TEST_CASE("contains") {
  const auto box = DownClosedPolytope::UnitBox(2);
  CHECK(contains(box, Vector::Zero(2), 0.0));
  CHECK_FALSE(contains(box, vec({1.001, 0.0}), 1e-9));
  CHECK_FALSE(contains(simplex2(), vec({0.6, 0.6}), 0.0));
  CHECK(contains(simplex2(), vec({0.5, 0.5}), 0.0));
  CHECK(contains(box, vec({-1e-10, 1.0}), 1e-9));
  CHECK_THROWS_AS(contains(box, Vector::Zero(3), 0.0), std::invalid_argument);
}

TEST_CASE("down-closedness on random polytopes") {
  const auto P = random_polytope(6, 4, 3);
  auto rng = CounterRng::Stream(11, {});
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const Vector x = test::random_feasible(P, rng);
    REQUIRE(contains(P, x, 1e-12));
    Vector y(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) y(j) = unif(rng) * x(j);
    REQUIRE(contains(P, y, 1e-12));
  }
}

TEST_CASE("linear_maximize examples") {
  const auto box = DownClosedPolytope::UnitBox(2);
  CHECK(linear_maximize(box, vec({1.0, -1.0})).isApprox(vec({1.0, 0.0})));
  CHECK(linear_maximize(box, vec({0.0, 0.0})) == Vector::Zero(2));

  // Vertex enumeration oracle for the simplex face.
  const auto P = simplex2();
  const auto verts = test::enumerate_vertices(P);
  CHECK(verts.size() == 3);
  double best = -1.0;
  for (const auto& v : verts) best = std::max(best, v.sum());
  const Vector x = linear_maximize(P, vec({1.0, 1.0}));
  CHECK(x.sum() == doctest::Approx(best).epsilon(1e-12));
  CHECK(x.sum() == doctest::Approx(1.0));
  CHECK(contains(P, x, 1e-9));
  CHECK_THROWS_AS(linear_maximize(P, Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("linear_maximize matches vertex enumeration") {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto P = random_polytope(3, 4, seed);
    const auto verts = test::enumerate_vertices(P);
    auto rng = CounterRng::Stream(seed, {99});
    for (int trial = 0; trial < 20; ++trial) {
      Vector c(3);
      for (int j = 0; j < 3; ++j) c(j) = unif(rng);
      double best = 0.0;
      for (const auto& v : verts) best = std::max(best, c.dot(v));
      const Vector x = linear_maximize(P, c);
      REQUIRE(contains(P, x, 1e-9));
      CHECK(c.dot(x) == doctest::Approx(best).epsilon(1e-9));
    }
  }
}

TEST_CASE("linear_maximize beats random feasible points") {
  const auto P = random_polytope(25, 15, 5);
  auto rng = CounterRng::Stream(5, {1});
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector c(25);
  for (int j = 0; j < 25; ++j) c(j) = normal(rng);
  const Vector x = linear_maximize(P, c);
  REQUIRE(contains(P, x, 1e-9));
  for (int trial = 0; trial < 1000; ++trial) {
    CHECK(c.dot(test::random_feasible(P, rng)) <= c.dot(x) + 1e-9);
  }
}

TEST_CASE("project examples") {
  const auto box = DownClosedPolytope::UnitBox(2);
  CHECK(project(box, vec({0.3, 0.7}), 1e-10).isApprox(vec({0.3, 0.7})));
  CHECK(project(box, vec({2.0, 0.5}), 1e-10).isApprox(vec({1.0, 0.5})));

  // Grid search over the polytope at step 1e-3 as the oracle.
  const auto P = simplex2();
  const Vector z = vec({1.0, 1.0});
  double best = 1e300;
  Vector arg(2);
  for (int i = 0; i <= 1000; ++i) {
    for (int k = 0; i + k <= 1000; ++k) {
      const Vector y = vec({i * 1e-3, k * 1e-3});
      const double d = (y - z).squaredNorm();
      if (d < best) {
        best = d;
        arg = y;
      }
    }
  }
  const Vector x = project(P, z, 1e-10);
  CHECK((x - arg).cwiseAbs().maxCoeff() <= 1e-4);
  CHECK((x - vec({0.5, 0.5})).cwiseAbs().maxCoeff() <= 1e-4);
  const Vector inside = vec({0.2, 0.3});
  CHECK(project(P, inside, 1e-10).isApprox(inside));
}

TEST_CASE("project is optimal, idempotent, and warm starts agree") {
  const auto P = random_polytope(25, 15, 7);
  auto rng = CounterRng::Stream(7, {2});
  std::normal_distribution<double> normal(0.0, 1.0);
  ProjectionWarmStart warm;
  for (int trial = 0; trial < 200; ++trial) {
    Vector z(25);
    for (int j = 0; j < 25; ++j) z(j) = 0.3 + 0.5 * normal(rng);
    const Vector x = project(P, z, 1e-10);
    REQUIRE(contains(P, x, 1e-9));
    // Variational inequality: max_{y in P} <z - x, y - x> = 0 at the projection.
    const Vector r = z - x;
    const Vector s = linear_maximize(P, r);
    CHECK(r.dot(s - x) <= 1e-8);
    CHECK((project(P, x, 1e-10) - x).norm() <= 1e-9);
    const Vector xw = project_warm(P, z, 1e-10, warm);
    CHECK((xw - x).norm() <= 1e-9);
  }
}

TEST_CASE("project rejects bad input") {
  const auto box = DownClosedPolytope::UnitBox(2);
  CHECK_THROWS_AS(project(box, vec({1.0, 1.0}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(project(box, vec({NAN, 1.0}), 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(project(box, Vector::Zero(3), 1e-9), std::invalid_argument);
}

TEST_CASE("inner_radius") {
  CHECK(inner_radius(DownClosedPolytope::UnitBox(3)) == doctest::Approx(1.0));
  CHECK(inner_radius(simplex2()) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(inner_radius(DownClosedPolytope::Box(vec({0.5, 1.0}))) == doctest::Approx(0.5));

  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 2.0;
  const DownClosedPolytope P(A, vec({1.0, 0.0}), Vector::Ones(2));
  CHECK(inner_radius(P) == doctest::Approx(0.5));
}

TEST_CASE("nonnegative part of the inner ball is feasible") {
  const auto P = random_polytope(5, 6, 13);
  const double r = inner_radius(P);
  auto rng = CounterRng::Stream(13, {3});
  for (int trial = 0; trial < 10000; ++trial) {
    const Vector v = sample_ball(5, rng);
    REQUIRE(contains(P, r * v.cwiseAbs(), 1e-12));
  }
}

TEST_CASE("shrink_interior") {
  const auto box = DownClosedPolytope::UnitBox(2);
  const auto s = shrink_interior(box, 0.1);
  CHECK(s.alpha == doctest::Approx(0.1 * (std::sqrt(2.0) + 1.0)));
  CHECK(s.alpha == doctest::Approx(0.24142).epsilon(1e-4));
  const Vector top = s.map(Vector::Ones(2));
  CHECK(top(0) == doctest::Approx(0.85858).epsilon(1e-4));
  CHECK(top(1) == doctest::Approx(0.85858).epsilon(1e-4));
  CHECK(s.map(Vector::Zero(2)).isApprox(Vector::Constant(2, 0.1)));

  const double bound = inner_radius(simplex2()) / (std::sqrt(2.0) + 1.0);
  CHECK_THROWS_AS(shrink_interior(simplex2(), bound), std::invalid_argument);
  CHECK_THROWS_AS(shrink_interior(simplex2(), 0.0), std::invalid_argument);
  CHECK_NOTHROW(shrink_interior(simplex2(), 0.99 * bound));

  // 10^4 sphere directions around the image of 0.
  auto rng = CounterRng::Stream(1, {4});
  for (int trial = 0; trial < 10000; ++trial) {
    const Vector v = sample_sphere(2, rng).v;
    REQUIRE(contains(box, s.map(Vector::Zero(2)) + 0.1 * v, 1e-12));
  }
}

TEST_CASE("delta-balls around the shrunk region stay inside") {
  const auto P = random_polytope(6, 5, 17);
  const double delta = 0.9 * inner_radius(P) / (std::sqrt(6.0) + 1.0);
  const auto s = shrink_interior(P, delta);
  auto rng = CounterRng::Stream(17, {5});
  for (int trial = 0; trial < 10000; ++trial) {
    const Vector x = s.map(test::random_feasible(P, rng));
    REQUIRE(s.region().contains(x, 1e-12));
    REQUIRE(contains(P, x + delta * sample_sphere(6, rng).v, 1e-9));
  }
}

TEST_CASE("affine region maps LP and projection") {
  const auto s = shrink_interior(simplex2(), 0.1);
  const AffineRegion R = s.region();
  const Vector v = R.linear_maximize(vec({1.0, 0.0}));
  CHECK(v.isApprox(s.map(vec({1.0, 0.0}))));
  ProjectionWarmStart warm;
  const Vector p = R.project(vec({5.0, 5.0}), 1e-10, warm);
  CHECK(R.contains(p, 1e-9));
  CHECK(p(0) == doctest::Approx(p(1)));
  CHECK(R.from_outer(R.to_outer(vec({0.2, 0.4}))).isApprox(vec({0.2, 0.4})));
  CHECK(R.diameter() == doctest::Approx((1.0 - s.alpha) * std::sqrt(2.0)));
}

TEST_CASE("radius_diameter_bounds") {
  const auto box = radius_diameter_bounds(DownClosedPolytope::UnitBox(2));
  CHECK(box.radius == doctest::Approx(std::sqrt(2.0)));
  CHECK(box.diameter == doctest::Approx(std::sqrt(2.0)));
  CHECK(radius_diameter_bounds(simplex2()).radius == doctest::Approx(1.0));
  CHECK(radius_diameter_bounds(DownClosedPolytope::Box(Vector::Constant(4, 0.5))).radius ==
        doctest::Approx(1.0));

  // Vertex enumeration gives the exact values on small random polytopes.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto P = random_polytope(3, 3, seed + 100);
    const auto verts = test::enumerate_vertices(P);
    double r = 0.0;
    double d = 0.0;
    for (const auto& a : verts) {
      r = std::max(r, a.norm());
      for (const auto& b : verts) d = std::max(d, (a - b).norm());
    }
    const auto est = radius_diameter_bounds(P);
    CHECK(est.radius <= r + 1e-9);
    CHECK(est.radius >= 0.9 * r);
    CHECK(est.diameter <= d + 1e-9);
    CHECK(est.diameter >= 0.9 * d);
  }
}

TEST_CASE("json round trip is exact") {
  const auto P = random_polytope(4, 3, 21);
  const auto Q = polytope_from_json(to_json(P));
  CHECK(Q.A() == P.A());
  CHECK(Q.b() == P.b());
  CHECK(Q.u() == P.u());
  const auto box = polytope_from_json(to_json(DownClosedPolytope::UnitBox(3)));
  CHECK(box.rows() == 0);
  CHECK(box.dim() == 3);
}
