#pragma once

namespace sparsec {

// Complementary error function. Delegates to the C library implementation,
// which is correctly rounded well past the 1e-12 accuracy needed here.
double erfc(double x);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0. Series
// expansion for x < a + 1, Lentz continued fraction otherwise.
double gamma_p(double a, double x);

// CDF of the chi distribution with dof degrees of freedom, evaluated at
// x >= 0: P(dof/2, x^2/2).
double chi_cdf(int dof, double x);

// Inverse of chi_cdf in x, found by Newton steps kept inside a bisection
// bracket. Accepts 1 <= dof <= 10^4 and 0 <= p < 1.
double chi_quantile(int dof, double p);

}  // namespace sparsec
