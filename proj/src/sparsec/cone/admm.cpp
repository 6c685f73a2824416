#include "sparsec/cone/admm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "sparsec/cone/projections.hpp"
#include "sparsec/numerics/linalg.hpp"

namespace sparsec {

namespace {

constexpr double kPenaltyMin = 1e-4;
constexpr double kPenaltyMax = 1e4;
constexpr double kResidualRatio = 10.0;
// Penalty changes rescale the dual variable, so checking the ratio on every
// iteration can trap the iterates in an exact limit cycle (observed period 8
// on l1 regression instances). Spacing the checks restores plain fixed-rho
// iterations in between, which are monotone and cannot cycle.
constexpr int kAdaptEvery = 50;

double clamp_penalty(double rho) {
  return std::min(kPenaltyMax, std::max(kPenaltyMin, rho));
}

enum class ZUpdate { BallProjection, NormProx };

// Shared loop for solve_mixed (z projected onto the eps ball) and
// solve_penalized (z through the prox of lambda * ||.||_2).
MixedSolution run_mixed_admm(const DenseVector& y, const DenseMatrix& h_raw,
                             double parameter, ZUpdate z_mode,
                             const SolverOptions& opts) {
  const Eigen::Index n = h_raw.rows();
  const Eigen::Index m = h_raw.cols();
  check_shape(y.size() == n, "solver: y has length " + std::to_string(y.size()) +
                                 " but H is " + shape_of(h_raw));
  check_shape(n >= m, "solver: H must be tall, got " + shape_of(h_raw));
  if (min_singular_value(h_raw) <= 1e-10) {
    throw std::invalid_argument("solver: H is rank deficient");
  }

  // Column equilibration: iterate on H D with unit-norm columns and map the
  // solution back through x = D x_scaled. The minimizer and objective are
  // unchanged; the splitting just converges at a rate set by the geometry of
  // the column space instead of the column scaling (network Jacobians mix
  // per-unit magnitudes and radians, which costs orders of magnitude here).
  DenseVector col_scale(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    col_scale(j) = 1.0 / h_raw.col(j).norm();
  }
  const DenseMatrix h = h_raw * col_scale.asDiagonal();

  const DenseMatrix ht = h.transpose();
  const Eigen::LLT<DenseMatrix> normal(ht * h);
  double rho = clamp_penalty(opts.penalty);

  DenseVector x = normal.solve(ht * y);
  DenseVector z = DenseVector::Zero(n);
  DenseVector w = DenseVector::Zero(n);
  DenseVector u = DenseVector::Zero(n);
  DenseVector hx = h * x;

  const double scale = 1.0 + y.norm();
  const auto objective_at = [&](const DenseVector& xv, const DenseVector& zv) {
    double obj = (y - h * xv - zv).lpNorm<1>();
    if (z_mode == ZUpdate::NormProx) obj += parameter * zv.norm();
    return obj;
  };

  SolveStatus status;
  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    x = normal.solve(ht * (y - z - w - u));
    hx.noalias() = h * x;

    const DenseVector z_old = z;
    const DenseVector w_old = w;
    if (z_mode == ZUpdate::BallProjection) {
      z = project_l2_ball(y - hx - w - u, parameter);
    } else {
      const DenseVector v = y - hx - w - u;
      const double vnorm = v.norm();
      const double keep = vnorm - parameter / rho;
      z = keep > 0.0 ? DenseVector(v * (keep / vnorm)) : DenseVector::Zero(n);
    }
    w = soft_threshold(y - hx - z - u, 1.0 / rho);

    const DenseVector r = hx + z + w - y;
    u += r;

    status.iterations = iter;
    status.primal_residual = r.norm();
    status.dual_residual = rho * (ht * (z - z_old + w - w_old)).norm();
    if (status.primal_residual <= opts.primal_tol * scale &&
        status.dual_residual <= opts.dual_tol * scale) {
      status.converged = true;
      break;
    }

    if (iter % kAdaptEvery == 0) {
      if (status.primal_residual > kResidualRatio * status.dual_residual) {
        const double next = clamp_penalty(rho * 2.0);
        if (next != rho) {
          u *= rho / next;
          rho = next;
        }
      } else if (status.dual_residual > kResidualRatio * status.primal_residual) {
        const double next = clamp_penalty(rho / 2.0);
        if (next != rho) {
          u *= rho / next;
          rho = next;
        }
      }
    }
  }

  status.objective = objective_at(x, z);

  // Refit x by least squares on the rows the l1 objective left tight. First
  // order splitting stops near the optimum; the refit sharpens x on exactly
  // consistent instances. Kept only when it does not hurt the objective.
  const DenseVector residual = y - hx - z;
  const double tight = 1e-6 * std::max(1.0, residual.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> active;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(residual(i)) <= tight) active.push_back(i);
  }
  if (static_cast<Eigen::Index>(active.size()) >= m) {
    DenseMatrix h_act(active.size(), m);
    DenseVector y_act(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
      h_act.row(k) = h.row(active[k]);
      y_act(k) = y(active[k]) - z(active[k]);
    }
    const DenseVector x_refit = h_act.colPivHouseholderQr().solve(y_act);
    const double obj_refit = objective_at(x_refit, z);
    if (obj_refit <= status.objective) {
      x = x_refit;
      status.objective = obj_refit;
    }
  }

  x = col_scale.asDiagonal() * x;
  return {std::move(x), std::move(z), status};
}

}  // namespace

MixedSolution solve_mixed(const DenseVector& y, const DenseMatrix& h, double eps,
                          const SolverOptions& opts) {
  if (eps < 0.0) throw std::invalid_argument("solve_mixed needs eps >= 0");
  return run_mixed_admm(y, h, eps, ZUpdate::BallProjection, opts);
}

MixedSolution solve_penalized(const DenseVector& y, const DenseMatrix& h,
                              double lambda, const SolverOptions& opts) {
  if (lambda < 0.0) throw std::invalid_argument("solve_penalized needs lambda >= 0");
  return run_mixed_admm(y, h, lambda, ZUpdate::NormProx, opts);
}

LinmaxSolution solve_linmax(const DenseVector& c, const DenseMatrix& a,
                            const std::vector<int>& j_rows, double l1_cap,
                            double l2_cap, const SolverOptions& opts) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = a.cols();
  check_shape(c.size() == m, "solve_linmax: c has length " +
                                 std::to_string(c.size()) + " but A is " +
                                 shape_of(a));
  if (j_rows.empty()) throw std::invalid_argument("solve_linmax: J is empty");
  for (int r : j_rows) {
    if (r < 0 || r >= n) throw std::invalid_argument("solve_linmax: J index out of range");
  }
  if (!(l1_cap > 0.0) || !(l2_cap > 0.0)) {
    throw std::invalid_argument("solve_linmax: caps must be positive");
  }

  const Eigen::Index q = static_cast<Eigen::Index>(j_rows.size());
  DenseMatrix b(q, m);
  for (Eigen::Index k = 0; k < q; ++k) b.row(k) = a.row(j_rows[k]);
  const DenseMatrix bt = b.transpose();
  const Eigen::LLT<DenseMatrix> gram(
      (bt * b + DenseMatrix::Identity(m, m)).eval());

  double rho = clamp_penalty(opts.penalty);
  DenseVector x = DenseVector::Zero(m);
  DenseVector s = DenseVector::Zero(q);
  DenseVector t = DenseVector::Zero(m);
  DenseVector us = DenseVector::Zero(q);
  DenseVector ut = DenseVector::Zero(m);

  const double scale = 1.0 + std::max(l1_cap, l2_cap);
  const double dual_scale = 1.0 + c.norm();

  SolveStatus status;
  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    const DenseVector rhs = c / rho + bt * (s - us) + (t - ut);
    x = gram.solve(rhs);
    const DenseVector bx = b * x;

    const DenseVector s_old = s;
    const DenseVector t_old = t;
    s = project_l1_ball(bx + us, l1_cap);
    t = project_l2_ball(x + ut, l2_cap);
    us += bx - s;
    ut += x - t;

    status.iterations = iter;
    status.primal_residual =
        std::sqrt((bx - s).squaredNorm() + (x - t).squaredNorm());
    status.dual_residual = rho * (bt * (s - s_old) + (t - t_old)).norm();
    if (status.primal_residual <= opts.primal_tol * scale &&
        status.dual_residual <= opts.dual_tol * dual_scale) {
      status.converged = true;
      break;
    }

    if (iter % kAdaptEvery == 0) {
      if (status.primal_residual > kResidualRatio * status.dual_residual) {
        const double next = clamp_penalty(rho * 2.0);
        if (next != rho) {
          const double ratio = rho / next;
          us *= ratio;
          ut *= ratio;
          rho = next;
        }
      } else if (status.dual_residual > kResidualRatio * status.primal_residual) {
        const double next = clamp_penalty(rho / 2.0);
        if (next != rho) {
          const double ratio = rho / next;
          us *= ratio;
          ut *= ratio;
          rho = next;
        }
      }
    }
  }

  // Pull the iterate onto the feasible set before reporting, so the value is
  // always attained by a feasible point.
  DenseVector x_feas = x;
  const double l1_val = (b * x_feas).lpNorm<1>();
  const double l2_val = x_feas.norm();
  const double blow =
      std::max({1.0, l1_val / l1_cap, l2_val / l2_cap});
  x_feas /= blow;

  LinmaxSolution out;
  out.value = c.dot(x_feas);
  out.l1_slack = l1_cap - (b * x_feas).lpNorm<1>();
  out.l2_slack = l2_cap - x_feas.norm();
  out.x = std::move(x_feas);
  status.objective = out.value;
  out.status = status;
  return out;
}

}  // namespace sparsec
