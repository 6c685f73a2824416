#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sparsec/cone/admm.hpp"
#include "sparsec/cone/lp_oracle.hpp"
#include "sparsec/cone/projections.hpp"
#include "sparsec/core/rng.hpp"
#include "sparsec/numerics/random.hpp"

using sparsec::DenseMatrix;
using sparsec::DenseVector;

namespace {

DenseVector random_vector(sparsec::RngState& rng, int n, double scale) {
  DenseVector v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * rng.gaussian();
  return v;
}

// Grid oracle for solve_linmax in two variables: sweep the angle, then take
// the largest radius the two constraints allow along that direction.
double linmax_grid_oracle(const DenseVector& c, const DenseMatrix& a,
                          const std::vector<int>& j_rows, double l1_cap,
                          double l2_cap, int grid) {
  double best = 0.0;
  for (int g = 0; g < grid; ++g) {
    const double th = 2.0 * M_PI * g / grid;
    DenseVector dir(2);
    dir << std::cos(th), std::sin(th);
    double l1 = 0.0;
    for (int r : j_rows) l1 += std::abs(a.row(r).dot(dir));
    double radius = l2_cap;
    if (l1 > 0.0) radius = std::min(radius, l1_cap / l1);
    best = std::max(best, c.dot(dir) * radius);
  }
  return best;
}

}  // namespace

TEST_CASE("l2 ball projection") {
  sparsec::RngState rng(11);
  const DenseVector inside = 0.3 * random_vector(rng, 6, 1.0).normalized();
  CHECK((sparsec::project_l2_ball(inside, 1.0) - inside).norm() == 0.0);

  const DenseVector v = random_vector(rng, 6, 3.0);
  const DenseVector p = sparsec::project_l2_ball(v, 1.5);
  CHECK(p.norm() <= 1.5 * (1.0 + 1e-12));
  // Direction preserved when the input is outside.
  if (v.norm() > 1.5) {
    CHECK((p / p.norm() - v / v.norm()).norm() < 1e-12);
  }
  CHECK(sparsec::project_l2_ball(v, 0.0).norm() == 0.0);
}

TEST_CASE("l1 ball projection satisfies the optimality certificate") {
  sparsec::RngState rng(12);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + static_cast<int>(rng.uniform_int(8));
    const DenseVector v = random_vector(rng, n, 2.0);
    const double radius = 0.1 + rng.uniform(0.0, 2.0);
    const DenseVector p = sparsec::project_l1_ball(v, radius);
    CAPTURE(rep);
    CHECK(p.lpNorm<1>() <= radius * (1.0 + 1e-10));
    // No sampled feasible point may be closer to v than the projection.
    const double dist = (p - v).norm();
    for (int probe = 0; probe < 60; ++probe) {
      DenseVector q = random_vector(rng, n, 1.0);
      q = q.lpNorm<1>() > 0 ? (radius * q / q.lpNorm<1>()) : q;
      q = q * rng.uniform(0.0, 1.0);
      CHECK((q - v).norm() >= dist - 1e-9);
    }
  }
}

TEST_CASE("l1 ball projection keeps interior points") {
  DenseVector v(3);
  v << 0.2, -0.1, 0.05;
  CHECK((sparsec::project_l1_ball(v, 1.0) - v).norm() == 0.0);
}

TEST_CASE("ball projections are nonexpansive") {
  sparsec::RngState rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    const DenseVector a = random_vector(rng, 7, 2.0);
    const DenseVector b = random_vector(rng, 7, 2.0);
    const double r = 0.5 + rng.uniform(0.0, 1.5);
    CHECK((sparsec::project_l2_ball(a, r) - sparsec::project_l2_ball(b, r))
              .norm() <= (a - b).norm() + 1e-12);
    CHECK((sparsec::project_l1_ball(a, r) - sparsec::project_l1_ball(b, r))
              .norm() <= (a - b).norm() + 1e-12);
  }
}

TEST_CASE("soft threshold is the l1 prox") {
  DenseVector v(4);
  v << 3.0, -0.4, 0.5, -2.0;
  const DenseVector p = sparsec::soft_threshold(v, 0.5);
  DenseVector expect(4);
  expect << 2.5, 0.0, 0.0, -1.5;
  CHECK((p - expect).norm() == 0.0);

  // Nonexpansive, like any prox. It is deliberately not idempotent: applying
  // it twice shrinks twice.
  sparsec::RngState rng(14);
  for (int rep = 0; rep < 30; ++rep) {
    const DenseVector a = random_vector(rng, 5, 2.0);
    const DenseVector b = random_vector(rng, 5, 2.0);
    CHECK((sparsec::soft_threshold(a, 0.3) - sparsec::soft_threshold(b, 0.3))
              .norm() <= (a - b).norm() + 1e-12);
  }
}

TEST_CASE("scalar l1 regression picks the weighted median") {
  DenseMatrix h(3, 1);
  h << 1.0, 1.0, 1.0;
  DenseVector y(3);
  y << 5.0, 5.0, 9.0;
  const sparsec::MixedSolution sol = sparsec::solve_mixed(y, h, 0.0);
  CHECK(sol.x(0) == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(sol.status.objective == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("consistent systems are reproduced exactly") {
  sparsec::RngState rng(15);
  const DenseMatrix h = sparsec::sample_gaussian(rng, 10, 4, 1.0);
  const DenseVector x0 = random_vector(rng, 4, 1.0);
  const sparsec::MixedSolution sol = sparsec::solve_mixed(h * x0, h, 0.0);
  CHECK((sol.x - x0).norm() < 1e-8);
  CHECK(sol.status.objective < 1e-8);
}

TEST_CASE("l1 regression matches the simplex oracle") {
  sparsec::RngState rng(16);
  for (int rep = 0; rep < 20; ++rep) {
    const DenseMatrix h = sparsec::sample_gaussian(rng, 12, 4, 1.0);
    DenseVector y = h * random_vector(rng, 4, 1.0);
    // A couple of gross entries keep the optimum away from zero residual.
    y(2) += 4.0;
    y(7) -= 3.0;
    const sparsec::LpSolution lp = sparsec::l1_regression_lp_oracle(y, h);
    const sparsec::MixedSolution sol = sparsec::solve_mixed(y, h, 0.0);
    CAPTURE(rep);
    CHECK(sol.status.objective ==
          doctest::Approx(lp.objective).epsilon(1e-5));
  }
}

TEST_CASE("mixed solutions are feasible and beat the ground truth objective") {
  sparsec::RngState rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const DenseMatrix h = sparsec::sample_gaussian(rng, 20, 6, 1.0);
    const DenseVector x0 = random_vector(rng, 6, 1.0);
    DenseVector v = random_vector(rng, 20, 0.05);
    const double eps = 0.3;
    if (v.norm() > eps) v *= 0.9 * eps / v.norm();
    DenseVector y = h * x0 + v;
    y(3) += 6.0;
    const sparsec::MixedSolution sol = sparsec::solve_mixed(y, h, eps);
    CAPTURE(rep);
    CHECK(sol.z.norm() <= eps + 1e-9);
    const double truth_objective = (y - h * x0 - v).lpNorm<1>();
    CHECK(sol.status.objective <= truth_objective + 1e-6);
  }
}

TEST_CASE("joint scaling of y and eps scales the solution") {
  sparsec::RngState rng(18);
  const DenseMatrix h = sparsec::sample_gaussian(rng, 15, 5, 1.0);
  DenseVector y = h * random_vector(rng, 5, 1.0) + random_vector(rng, 15, 0.02);
  y(4) += 5.0;
  const double eps = 0.2;
  const double c = 37.0;
  const sparsec::MixedSolution base = sparsec::solve_mixed(y, h, eps);
  const sparsec::MixedSolution scaled = sparsec::solve_mixed(c * y, h, c * eps);
  CHECK(scaled.status.objective ==
        doctest::Approx(c * base.status.objective).epsilon(1e-5));
  CHECK((scaled.x - c * base.x).norm() < 1e-4 * c * (1.0 + base.x.norm()));
}

TEST_CASE("penalized form interpolates between extremes") {
  sparsec::RngState rng(19);
  const DenseMatrix h = sparsec::sample_gaussian(rng, 12, 4, 1.0);
  DenseVector y = h * random_vector(rng, 4, 1.0);
  y(1) += 3.0;

  // Tiny penalty: z absorbs everything, objective near zero.
  const sparsec::MixedSolution loose = sparsec::solve_penalized(y, h, 1e-6);
  CHECK(loose.status.objective < 1e-3);

  // Huge penalty: z is forced to zero and the fit matches plain l1.
  const sparsec::MixedSolution tight = sparsec::solve_penalized(y, h, 1e6);
  const sparsec::MixedSolution plain = sparsec::solve_mixed(y, h, 0.0);
  CHECK(tight.z.norm() < 1e-5);
  CHECK(tight.status.objective ==
        doctest::Approx(plain.status.objective).epsilon(1e-4));
}

TEST_CASE("penalized objective is never beaten by sampled candidates") {
  sparsec::RngState rng(20);
  const DenseMatrix h = sparsec::sample_gaussian(rng, 10, 3, 1.0);
  DenseVector y = h * random_vector(rng, 3, 1.0);
  y(5) -= 4.0;
  const double lambda = 0.7;
  const sparsec::MixedSolution sol = sparsec::solve_penalized(y, h, lambda);
  const double value = sol.status.objective;
  for (int probe = 0; probe < 200; ++probe) {
    const DenseVector x = sol.x + random_vector(rng, 3, 0.3);
    const DenseVector z = sol.z + random_vector(rng, 10, 0.3);
    const double candidate = (y - h * x - z).lpNorm<1>() + lambda * z.norm();
    CHECK(candidate >= value - 1e-6);
  }
}

TEST_CASE("linmax agrees with the polar grid oracle") {
  sparsec::RngState rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const DenseMatrix a = sparsec::sample_gaussian(rng, 8, 2, 1.0);
    DenseVector c = a.row(0).transpose();
    std::vector<int> j_rows;
    for (int r = 1; r < 8; ++r) j_rows.push_back(r);
    const double l1_cap = 1.0 + rng.uniform(0.0, 0.5);
    const double l2_cap = 0.2 + rng.uniform(0.0, 1.0);
    const sparsec::LinmaxSolution sol =
        sparsec::solve_linmax(c, a, j_rows, l1_cap, l2_cap);
    const double grid =
        linmax_grid_oracle(c, a, j_rows, l1_cap, l2_cap, 20000);
    CAPTURE(rep);
    CHECK(sol.value == doctest::Approx(grid).epsilon(1e-3));
  }
}

TEST_CASE("linmax returns feasible maximizers") {
  sparsec::RngState rng(22);
  const DenseMatrix a = sparsec::sample_gaussian(rng, 10, 3, 1.0);
  const DenseVector c = a.row(0).transpose();
  std::vector<int> j_rows = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  const sparsec::LinmaxSolution sol =
      sparsec::solve_linmax(c, a, j_rows, 1.3, 0.8);
  double l1 = 0.0;
  for (int r : j_rows) l1 += std::abs(a.row(r).dot(sol.x));
  CHECK(l1 <= 1.3 * (1.0 + 1e-6));
  CHECK(sol.x.norm() <= 0.8 * (1.0 + 1e-6));
  CHECK(sol.value == doctest::Approx(c.dot(sol.x)).epsilon(1e-9));
}

TEST_CASE("solver input validation") {
  DenseMatrix h(3, 1);
  h << 1.0, 1.0, 1.0;
  DenseVector y(2);
  y << 1.0, 2.0;
  CHECK_THROWS_AS(sparsec::solve_mixed(y, h, 0.0), sparsec::BadShape);
  DenseVector y3(3);
  y3 << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(sparsec::solve_mixed(y3, h, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(sparsec::solve_penalized(y3, h, -1.0), std::invalid_argument);
}

TEST_CASE("iteration caps surface through the status") {
  sparsec::RngState rng(23);
  const DenseMatrix h = sparsec::sample_gaussian(rng, 30, 10, 1.0);
  DenseVector y = h * random_vector(rng, 10, 1.0);
  for (int i = 0; i < 6; ++i) y(i) += 5.0 * rng.gaussian();
  sparsec::SolverOptions opts;
  opts.max_iters = 3;
  const sparsec::MixedSolution sol = sparsec::solve_mixed(y, h, 0.0, opts);
  CHECK_FALSE(sol.status.converged);
  CHECK(sol.status.iterations == 3);
}
