#include "sparsec/aep/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sparsec/numerics/optimize.hpp"
#include "sparsec/numerics/special.hpp"

namespace sparsec {

double width_bound(double alpha, double u2) {
  if (u2 < 0.0) throw std::invalid_argument("width_bound needs u2 >= 0");
  if (alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("width_bound needs alpha in [0, 1]");
  }
  const double radicand = (u2 * u2 + 1.0) * erfc(u2 / std::sqrt(2.0)) -
                          std::sqrt(2.0 / M_PI) * u2 * std::exp(-0.5 * u2 * u2);
  // The radicand is a truncated second moment, nonnegative by construction;
  // clamp the few-ulp negatives that cancellation produces deep in the tail.
  return std::sqrt(std::max(0.0, radicand)) + alpha * u2;
}

double g_of_alpha(double alpha) {
  const auto result = minimize_unimodal(
      [alpha](double u2) { return width_bound(alpha, u2); }, 0.0, 20.0, 1e-10);
  return result.value;
}

double alpha_star(double delta, double tol) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("alpha_star needs delta in (0, 1), got " +
                                std::to_string(delta));
  }
  if (!(tol > 0.0)) throw std::invalid_argument("alpha_star needs tol > 0");
  const double target = std::sqrt(1.0 - delta);
  // g(0+) is arbitrarily small and g(1) = 1 > target, so the bracket holds.
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 60 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (g_of_alpha(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Balancedness balancedness_c(double mu, double alpha) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw std::invalid_argument("balancedness_c needs mu in (0, 1)");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("balancedness_c needs alpha in (0, 1]");
  }
  if (!(alpha * alpha < 1.0 - mu)) {
    throw std::invalid_argument(
        "balancedness_c needs alpha^2 < 1 - mu (positive leading coefficient)");
  }

  const double a2 = alpha * alpha;
  const double lead = 1.0 / a2 - 1.0 / (1.0 - mu);
  const double linear = 2.0 / a2;
  const double constant = 1.0 / a2 - 1.0 / mu;

  Balancedness out;
  if (constant >= 0.0) {
    out.c = 0.0;  // q(0) >= 0 already
  } else {
    out.c = (-linear + std::sqrt(linear * linear - 4.0 * lead * constant)) /
            (2.0 * lead);
  }
  out.recoverable = out.c > 1.0;
  return out;
}

double sparsity_threshold(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("sparsity_threshold needs alpha in (0, 1)");
  }
  return 0.5 * (1.0 - std::sqrt(1.0 - alpha * alpha));
}

std::optional<double> varpi(double delta, double mu) {
  const double alpha = alpha_star(delta);
  const Balancedness bal = balancedness_c(mu, alpha);
  if (!bal.recoverable) return std::nullopt;
  const double sigma_ratio = 1.0 - std::sqrt(delta);
  return 2.0 * (bal.c + 1.0) / (sigma_ratio * alpha * (bal.c - 1.0));
}

double error_bound(double c, double alpha, double sigma_min, double eps) {
  if (!(c > 1.0)) throw std::invalid_argument("error_bound needs C > 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("error_bound needs alpha in (0, 1]");
  }
  if (!(sigma_min > 0.0)) throw std::invalid_argument("error_bound needs sigma_min > 0");
  if (eps < 0.0) throw std::invalid_argument("error_bound needs eps >= 0");
  return 2.0 * (c + 1.0) / (sigma_min * alpha * (c - 1.0)) * eps;
}

BoundReport bound_report(double delta, double mu) {
  BoundReport report;
  report.delta = delta;
  report.mu = mu;
  report.alpha_star = alpha_star(delta);
  const Balancedness bal = balancedness_c(mu, report.alpha_star);
  report.c = bal.c;
  report.recoverable = bal.recoverable;
  report.sparsity_threshold = sparsity_threshold(report.alpha_star);
  if (bal.recoverable) {
    const double sigma_ratio = 1.0 - std::sqrt(delta);
    report.varpi =
        2.0 * (bal.c + 1.0) / (sigma_ratio * report.alpha_star * (bal.c - 1.0));
  }
  return report;
}

}  // namespace sparsec
