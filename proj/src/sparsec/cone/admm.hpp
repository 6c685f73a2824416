#pragma once

#include <vector>

#include "sparsec/core/types.hpp"

namespace sparsec {

struct SolverOptions {
  int max_iters = 20000;
  double primal_tol = 1e-8;
  double dual_tol = 1e-8;
  // Initial ADMM penalty. Self-adapts by x2 / /2 whenever one residual
  // exceeds the other tenfold, clamped to [1e-4, 1e4].
  double penalty = 1.0;
};

struct SolveStatus {
  bool converged = false;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;
};

struct MixedSolution {
  DenseVector x;
  DenseVector z;
  SolveStatus status;
};

// min ||y - H x - z||_1  subject to  ||z||_2 <= eps.
//
// Splitting with w = y - H x - z: alternate a least-squares x update (normal
// equations, factorization cached across iterations), a ball projection for
// z, soft thresholding for w, and a scaled dual ascent on the consensus
// constraint H x + z + w = y. Requires H of full column rank.
MixedSolution solve_mixed(const DenseVector& y, const DenseMatrix& h, double eps,
                          const SolverOptions& opts = {});

// min ||y - H x - z||_1 + lambda ||z||_2. Same splitting; the z update is
// the prox of the Euclidean norm (block soft threshold) instead of a
// projection. lambda -> infinity recovers plain l1 regression, lambda -> 0
// drives the objective to zero with z exactly (as tolerance allows) equal
// to y - H x.
MixedSolution solve_penalized(const DenseVector& y, const DenseMatrix& h,
                              double lambda, const SolverOptions& opts = {});

struct LinmaxSolution {
  DenseVector x;
  double value = 0.0;
  double l1_slack = 0.0;  // l1_cap - ||(A x)_J||_1 at the returned point
  double l2_slack = 0.0;  // l2_cap - ||x||_2 at the returned point
  SolveStatus status;
};

// max c^T x  subject to  ||(A x)_J||_1 <= l1_cap, ||x||_2 <= l2_cap.
//
// Two-block ADMM on the splits s = (A x)_J (l1 ball) and t = x (l2 ball);
// the x update solves (A_J^T A_J + I) x = ..., which is always nonsingular.
// The returned point is rescaled onto the feasible set, so its value is a
// valid lower bound on the optimum.
LinmaxSolution solve_linmax(const DenseVector& c, const DenseMatrix& a,
                            const std::vector<int>& j_rows, double l1_cap,
                            double l2_cap, const SolverOptions& opts = {});

}  // namespace sparsec
