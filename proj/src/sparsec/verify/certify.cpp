#include "sparsec/verify/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sparsec/core/parallel.hpp"
#include "sparsec/numerics/linalg.hpp"

namespace sparsec {

namespace {

DenseMatrix drop_row(const DenseMatrix& h0, int row) {
  DenseMatrix out(h0.rows() - 1, h0.cols());
  out.topRows(row) = h0.topRows(row);
  out.bottomRows(h0.rows() - 1 - row) = h0.bottomRows(h0.rows() - 1 - row);
  return out;
}

}  // namespace

double row_alpha_bound(const DenseMatrix& h0, double eps, int row,
                       const SolverOptions& solver) {
  const Eigen::Index n = h0.rows();
  check_shape(row >= 0 && row < n,
              "row_alpha_bound: row " + std::to_string(row) + " of " + shape_of(h0));
  if (eps < 0.0) throw std::invalid_argument("row_alpha_bound: eps < 0");

  const double s_deleted = min_singular_value(drop_row(h0, row));
  const double margin = s_deleted - (n - 1) * eps;
  if (margin <= 0.0) {
    throw DegenerateRelaxation(
        "row " + std::to_string(row) + ": deleted-row sigma_min " +
        std::to_string(s_deleted) + " <= (n-1) eps = " +
        std::to_string((n - 1) * eps));
  }
  const double t_prime = 1.0 / margin;
  const double l1_cap = 1.0 + (n - 1) * eps * t_prime;

  std::vector<int> others;
  others.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    if (i != row) others.push_back(i);
  }

  const DenseVector objective = h0.row(row).transpose();
  const double plus =
      solve_linmax(objective, h0, others, l1_cap, t_prime, solver).value;
  const double minus =
      solve_linmax(-objective, h0, others, l1_cap, t_prime, solver).value;
  return std::max(plus, minus) + eps * t_prime;
}

DenseVector row_alpha_bounds(const DenseMatrix& h0, double eps,
                             const VerificationOptions& opts) {
  DenseVector alphas(h0.rows());
  // Exceptions may not cross the work-pool boundary; degenerate rows are
  // flagged as NaN inside and rethrown once the pool has drained.
  parallel_for(static_cast<std::size_t>(h0.rows()), opts.parallel,
               [&](std::size_t i) {
                 try {
                   alphas(i) = row_alpha_bound(h0, eps, static_cast<int>(i),
                                               opts.solver);
                 } catch (const DegenerateRelaxation&) {
                   alphas(i) = std::numeric_limits<double>::quiet_NaN();
                 }
               });
  for (Eigen::Index i = 0; i < alphas.size(); ++i) {
    if (std::isnan(alphas(i))) {
      throw DegenerateRelaxation("row " + std::to_string(i) +
                                 ": sigma_min too small for eps");
    }
  }
  return alphas;
}

double balancedness_from_alphas(const DenseVector& alphas, int k) {
  check_shape(k >= 1 && k <= alphas.size(),
              "balancedness_from_alphas: k = " + std::to_string(k) + " with " +
                  std::to_string(alphas.size()) + " rows");
  if (alphas.minCoeff() < 0.0) {
    throw std::invalid_argument("balancedness_from_alphas: negative alpha");
  }
  std::vector<double> fractions(alphas.size());
  for (Eigen::Index i = 0; i < alphas.size(); ++i) {
    fractions[i] = alphas(i) / (1.0 + alphas(i));
  }
  std::partial_sort(fractions.begin(), fractions.begin() + k, fractions.end(),
                    std::greater<double>());
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += fractions[i];
  if (sum >= 1.0) {
    throw std::invalid_argument(
        "balancedness_from_alphas: top-" + std::to_string(k) +
        " fraction sum " + std::to_string(sum) + " >= 1, C would be <= 0");
  }
  return 1.0 / sum - 1.0;
}

namespace {

ConvergenceCheck check_from(const DenseVector& alphas, double sigma_min_h0,
                            Eigen::Index n, Eigen::Index m, double eps, int k,
                            bool use_m_denominator) {
  ConvergenceCheck out;
  out.beta = std::numeric_limits<double>::infinity();
  try {
    out.c = balancedness_from_alphas(alphas, k);
  } catch (const std::invalid_argument&) {
    out.c = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double root = std::sqrt(static_cast<double>(use_m_denominator ? m : n));
  const double denominator = sigma_min_h0 / root - n * eps;
  if (out.c > 1.0 && denominator > 0.0) {
    out.beta = 2.0 * (out.c + 1.0) / (out.c - 1.0) * 2.0 * n * eps / denominator;
    out.pass = out.beta < 1.0;
  }
  return out;
}

}  // namespace

ConvergenceCheck convergence_condition(const DenseMatrix& h0, double eps, int k,
                                       const VerificationOptions& opts) {
  const DenseVector alphas = row_alpha_bounds(h0, eps, opts);
  return check_from(alphas, min_singular_value(h0), h0.rows(), h0.cols(), eps,
                    k, opts.use_m_denominator);
}

VerificationReport certify_matrix(const DenseMatrix& h0, double eps, int k_max,
                                  const VerificationOptions& opts) {
  check_shape(k_max >= 1 && k_max <= h0.rows(),
              "certify_matrix: k_max = " + std::to_string(k_max));
  VerificationReport report;
  report.eps_jacobian = eps;
  report.alphas = row_alpha_bounds(h0, eps, opts);
  const double sigma_min_h0 = min_singular_value(h0);
  for (int k = 1; k <= k_max; ++k) {
    const ConvergenceCheck check = check_from(
        report.alphas, sigma_min_h0, h0.rows(), h0.cols(), eps, k,
        opts.use_m_denominator);
    report.c_of_k.push_back(check.c);
    report.beta_of_k.push_back(check.beta);
    report.pass_of_k.push_back(check.pass);
    if (check.pass) report.certified_k = k;
  }
  return report;
}

VerificationReport certify_region(const MeasurementModel& model,
                                  const DenseVector& x0, double eps, int k_max,
                                  const VerificationOptions& opts) {
  return certify_matrix(model.jacobian_at(x0), eps, k_max, opts);
}

}  // namespace sparsec
