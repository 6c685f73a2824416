#pragma once

#include <optional>

namespace sparsec {

// The almost-Euclidean machinery: for a random (n - m)-dimensional kernel to
// satisfy alpha * sqrt(n) * ||w||_2 <= ||w||_1, the Gaussian width of the
// sphere subset { ||w||_2 = 1, ||w||_1 <= alpha * sqrt(n) } must stay below
// sqrt(n - m). width_bound is that width divided by sqrt(n), parametrized by
// the slack variable u2 of the dual witness; g_of_alpha minimizes it over
// u2; alpha_star inverts g against sqrt(1 - delta).

// sqrt((u2^2 + 1) * erfc(u2 / sqrt(2)) - sqrt(2/pi) * u2 * exp(-u2^2 / 2))
//   + alpha * u2,   for u2 >= 0, 0 <= alpha <= 1.
double width_bound(double alpha, double u2);

// min of width_bound(alpha, .) over u2 in [0, 20]. The first term decays to
// ~1e-40 by u2 = 10, so the cap is inert; the function is convex in u2.
double g_of_alpha(double alpha);

// Largest alpha with g(alpha) < sqrt(1 - delta), by bisection on the
// nondecreasing map alpha -> g(alpha). The returned alpha satisfies
// g(alpha) < sqrt(1 - delta) <= g(alpha + tol).
double alpha_star(double delta, double tol = 1e-6);

struct Balancedness {
  double c = 0.0;         // smallest nonnegative C with q(C) >= 0
  bool recoverable = false;  // true iff c > 1, which the error bounds need
};

// Smallest nonnegative C satisfying 1/mu + C^2/(1-mu) <= (C+1)^2/alpha^2,
// from the closed-form quadratic q(C) = (C+1)^2/alpha^2 - C^2/(1-mu) - 1/mu:
// the larger root when q(0) < 0, else 0. Requires alpha^2 < 1 - mu so the
// leading coefficient is positive.
Balancedness balancedness_c(double mu, double alpha);

// The mu where C crosses 1 at the given alpha: q(1) = 0 gives
// mu (1 - mu) = alpha^2 / 4, so mu = (1 - sqrt(1 - alpha^2)) / 2.
double sparsity_threshold(double alpha);

// Error-bound coefficient 2(C+1) / ((1 - sqrt(delta)) * alpha * (C-1)) with
// alpha = alpha_star(delta) and C = balancedness_c(mu, alpha); the bound
// reads ||x - x_hat||_2 <= varpi * eps / sqrt(n). Empty when C <= 1 (no
// recovery guarantee at this sparsity).
std::optional<double> varpi(double delta, double mu);

// Decoding error bound 2(C+1) / (sigma_min * alpha * (C-1)) * eps.
double error_bound(double c, double alpha, double sigma_min, double eps);

struct BoundReport {
  double delta = 0.0;
  double alpha_star = 0.0;
  double mu = 0.0;
  double c = 0.0;
  bool recoverable = false;
  double varpi = 0.0;  // meaningful only when recoverable
  double sparsity_threshold = 0.0;
};

BoundReport bound_report(double delta, double mu);

}  // namespace sparsec
