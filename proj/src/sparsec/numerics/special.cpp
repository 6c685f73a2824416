#include "sparsec/numerics/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sparsec {

double erfc(double x) { return std::erfc(x); }

namespace {

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0) throw std::invalid_argument("gamma_p requires a > 0");
  if (x < 0.0) throw std::invalid_argument("gamma_p requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double chi_cdf(int dof, double x) {
  if (dof < 1) throw std::invalid_argument("chi_cdf requires dof >= 1");
  if (x <= 0.0) return 0.0;
  return gamma_p(0.5 * dof, 0.5 * x * x);
}

double chi_quantile(int dof, double p) {
  if (dof < 1 || dof > 10000) {
    throw std::invalid_argument("chi_quantile: dof out of range [1, 1e4], got " +
                                std::to_string(dof));
  }
  if (p < 0.0 || p >= 1.0) {
    throw std::invalid_argument("chi_quantile: p must lie in [0, 1), got " +
                                std::to_string(p));
  }
  if (p == 0.0) return 0.0;

  // Bracket the root, then refine with Newton steps that fall back to
  // bisection whenever they leave the bracket.
  double lo = 0.0;
  double hi = std::sqrt(static_cast<double>(dof)) + 10.0;
  while (chi_cdf(dof, hi) < p) hi *= 2.0;

  const double half_dof = 0.5 * dof;
  const double log_norm =
      (half_dof - 1.0) * std::log(2.0) + std::lgamma(half_dof);
  double x = std::sqrt(static_cast<double>(dof));
  if (x <= lo || x >= hi) x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = chi_cdf(dof, x) - p;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double log_pdf =
        (dof - 1) * std::log(x) - 0.5 * x * x - log_norm;
    const double pdf = std::exp(log_pdf);
    double next = x - f / pdf;
    if (!(next > lo && next < hi) || !std::isfinite(next)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - x) <= 1e-12 * std::max(1.0, x)) return next;
    x = next;
  }
  return x;
}

}  // namespace sparsec
