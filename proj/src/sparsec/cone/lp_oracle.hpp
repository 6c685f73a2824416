#pragma once

#include "sparsec/core/types.hpp"

namespace sparsec {

struct LpSolution {
  DenseVector x;
  double objective = 0.0;
};

// min ||y - H x||_1 solved exactly as a linear program: lift |r_i| <= t_i,
// split x into nonnegative parts, and run two-phase tableau simplex with
// Bland's rule. Independent of the splitting solvers by construction; meant
// as a test oracle for small instances (rows <= 30, cols <= 8).
LpSolution l1_regression_lp_oracle(const DenseVector& y, const DenseMatrix& h);

}  // namespace sparsec
