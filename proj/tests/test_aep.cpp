#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <stdexcept>

#include "sparsec/aep/bounds.hpp"
#include "sparsec/core/rng.hpp"

namespace {

// Quadrature oracle for the width integrand: the expression under the square
// root equals 2 * E[max(g - u, 0)^2] for standard normal g, so integrate
// (t - u)^2 phi(t) over [u, inf) with adaptive Simpson and compare.
double simpson(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double whole, double tol, int depth) {
  const double c = 0.5 * (a + b);
  const double left = simpson(f, a, c);
  const double right = simpson(f, c, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, c, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, c, b, right, 0.5 * tol, depth - 1);
}

double tail_second_moment(double u) {
  const auto f = [u](double t) {
    return (t - u) * (t - u) * std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI);
  };
  const double hi = u + 12.0;
  return adaptive_simpson(f, u, hi, simpson(f, u, hi), 1e-14, 40);
}

}  // namespace

TEST_CASE("width bound matches the quadrature oracle") {
  for (double u : {0.0, 0.3, 0.8, 1.5, 3.0}) {
    for (double alpha : {0.1, 0.333, 0.9}) {
      CAPTURE(u);
      CAPTURE(alpha);
      const double expect =
          std::sqrt(2.0 * tail_second_moment(u)) + alpha * u;
      CHECK(sparsec::width_bound(alpha, u) ==
            doctest::Approx(expect).epsilon(1e-9));
    }
  }
  CHECK(sparsec::width_bound(0.25, 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(sparsec::width_bound(0.5, -1.0), std::invalid_argument);
}

TEST_CASE("g is the minimum over the threshold variable") {
  // Frozen from an independent golden-section run on the closed form.
  CHECK(sparsec::g_of_alpha(0.332) ==
        doctest::Approx(0.7058777197052664).epsilon(1e-8));
  // Nondecreasing in alpha: a larger slope can only raise the minimum.
  double prev = 0.0;
  for (double alpha = 0.05; alpha <= 0.95; alpha += 0.05) {
    const double g = sparsec::g_of_alpha(alpha);
    CHECK(g >= prev - 1e-12);
    CHECK(g <= sparsec::width_bound(alpha, 0.7) + 1e-12);
    prev = g;
  }
}

TEST_CASE("alpha_star solves g(alpha) = sqrt(1 - delta)") {
  const double a = sparsec::alpha_star(0.5);
  CHECK(a == doctest::Approx(0.332945823669).epsilon(1e-5));
  for (double delta : {0.3, 0.5, 0.7}) {
    const double astar = sparsec::alpha_star(delta);
    CHECK(sparsec::g_of_alpha(astar) <= std::sqrt(1.0 - delta));
    CHECK(sparsec::g_of_alpha(astar + 2e-6) >=
          std::sqrt(1.0 - delta) * (1.0 - 1e-9));
  }

  // More oversampling (smaller delta = m/n) leaves more room, so the
  // achievable alpha grows as delta shrinks.
  double prev = 1.0;
  for (double delta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double cur = sparsec::alpha_star(delta);
    CHECK(cur < prev + 1e-12);
    CHECK(cur > 0.0);
    prev = cur;
  }
  CHECK_THROWS_AS(sparsec::alpha_star(0.0), std::invalid_argument);
  CHECK_THROWS_AS(sparsec::alpha_star(1.0), std::invalid_argument);
}

TEST_CASE("balancedness constant is a root of its quadratic") {
  sparsec::RngState rng(31);
  const auto quadratic = [](double c, double mu, double alpha) {
    return (c + 1.0) * (c + 1.0) / (alpha * alpha) - c * c / (1.0 - mu) -
           1.0 / mu;
  };
  // Alpha stays below 0.7 so that mu = alpha^2 (the root's existence limit)
  // is inside the quadratic's domain mu < 1 - alpha^2 for both regimes.
  for (int rep = 0; rep < 100; ++rep) {
    const double alpha = rng.uniform(0.05, 0.7);
    const double thresh = sparsec::sparsity_threshold(alpha);
    CAPTURE(alpha);

    // Below the C = 1 crossing: the constant is a genuine root above 1.
    const double mu_low = rng.uniform(0.01 * thresh, 0.98 * thresh);
    const sparsec::Balancedness lo = sparsec::balancedness_c(mu_low, alpha);
    CAPTURE(mu_low);
    CHECK(lo.recoverable);
    CHECK(lo.c > 1.0);
    CHECK(std::abs(quadratic(lo.c, mu_low, alpha)) < 1e-8);

    // Between the crossing and mu = alpha^2 the root exists but sits at or
    // below 1, so no recovery guarantee.
    const double mu_high = rng.uniform(
        1.02 * thresh,
        0.98 * std::min(alpha * alpha, 1.0 - alpha * alpha));
    const sparsec::Balancedness hi = sparsec::balancedness_c(mu_high, alpha);
    CAPTURE(mu_high);
    CHECK_FALSE(hi.recoverable);
    CHECK(hi.c > 0.0);
    CHECK(hi.c <= 1.0 + 1e-12);
    CHECK(std::abs(quadratic(hi.c, mu_high, alpha)) < 1e-8);
  }
}

TEST_CASE("balancedness reports unrecoverable regimes") {
  // mu >= alpha^2 puts the quadratic's value at zero above zero.
  const sparsec::Balancedness b = sparsec::balancedness_c(0.2, 0.3);
  CHECK_FALSE(b.recoverable);
  CHECK(b.c == 0.0);
  CHECK_THROWS_AS(sparsec::balancedness_c(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sparsec::balancedness_c(0.1, 1.5), std::invalid_argument);
}

TEST_CASE("sparsity threshold is where C crosses one") {
  for (double alpha : {0.2, 0.332945823669, 0.6}) {
    const double mu_star = sparsec::sparsity_threshold(alpha);
    CAPTURE(alpha);
    // Closed form (1 - sqrt(1 - alpha^2)) / 2.
    CHECK(mu_star ==
          doctest::Approx((1.0 - std::sqrt(1.0 - alpha * alpha)) / 2.0));
    CHECK(sparsec::balancedness_c(mu_star, alpha).c ==
          doctest::Approx(1.0).epsilon(1e-9));
    // Just below the threshold the constant exceeds one, just above it drops.
    CHECK(sparsec::balancedness_c(0.95 * mu_star, alpha).c > 1.0);
    CHECK(sparsec::balancedness_c(1.05 * mu_star, alpha).c < 1.0);
  }
}

TEST_CASE("half-oversampling threshold lands in the published band") {
  const double mu_star =
      sparsec::sparsity_threshold(sparsec::alpha_star(0.5));
  CHECK(mu_star > 0.0289 - 0.0015);
  CHECK(mu_star < 0.0289 + 0.0015);
}

TEST_CASE("varpi grows with sparsity and vanishes past the threshold") {
  double prev = 0.0;
  for (double mu = 0.002; mu <= 0.0201; mu += 0.002) {
    const auto v = sparsec::varpi(0.5, mu);
    REQUIRE(v.has_value());
    CHECK(*v > prev);
    prev = *v;
  }
  // Far past the threshold there is no C > 1, hence no bound.
  CHECK_FALSE(sparsec::varpi(0.5, 0.2).has_value());
}

TEST_CASE("error bound scales linearly in eps") {
  const double b1 = sparsec::error_bound(1.5, 0.33, 0.5, 0.1);
  CHECK(sparsec::error_bound(1.5, 0.33, 0.5, 0.0) == 0.0);
  CHECK(sparsec::error_bound(1.5, 0.33, 0.5, 0.2) ==
        doctest::Approx(2.0 * b1));
  // Explicit coefficient: 2(C+1) / (sigma_min * alpha * (C-1)).
  CHECK(b1 == doctest::Approx(2.0 * 2.5 / (0.5 * 0.33 * 0.5) * 0.1));
  CHECK_THROWS_AS(sparsec::error_bound(1.0, 0.33, 0.5, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(sparsec::error_bound(2.0, 0.33, 0.0, 0.1),
                  std::invalid_argument);
}

TEST_CASE("bound report is internally consistent") {
  const sparsec::BoundReport rep = sparsec::bound_report(0.5, 0.01);
  CHECK(rep.alpha_star ==
        doctest::Approx(sparsec::alpha_star(0.5)).epsilon(1e-9));
  CHECK(rep.recoverable);
  CHECK(rep.sparsity_threshold ==
        doctest::Approx(sparsec::sparsity_threshold(rep.alpha_star)));
  const double expect =
      2.0 * (rep.c + 1.0) /
      ((1.0 - std::sqrt(0.5)) * rep.alpha_star * (rep.c - 1.0));
  CHECK(rep.varpi == doctest::Approx(expect).epsilon(1e-9));
}
