#pragma once

#include <vector>

#include "sparsec/cone/admm.hpp"
#include "sparsec/estimators/model.hpp"

namespace sparsec {

// Synthetic measurement corruption: dense N(0, sigma^2) noise on every row
// plus gross errors N(0, error_sigma^2) on a uniformly random support of
// round(rho * n) rows.
struct NoiseModel {
  double sigma = 0.0;
  double rho = 0.0;
  double error_sigma = 4.0;
};

enum class DecodeStatus { Converged, MaxIterations, SingularJacobian, RankLoss };

struct DecodeResult {
  DenseVector x_hat;
  DenseVector residual;  // y - h(x_hat)
  int iterations = 0;
  // Relative error ||x^k - truth|| / ||truth|| after each outer iteration;
  // filled only when a ground truth is supplied.
  std::vector<double> trace;
  DecodeStatus status = DecodeStatus::Converged;
  SolveStatus solver;  // inner solver status of the final iteration
};

// One-shot linear decoding through the mixed program.
DecodeResult decode_linear(const DenseVector& y, const DenseMatrix& h, double eps,
                           const SolverOptions& opts = {});

// Iterative nonlinear decoding: at each outer step k, linearize around the
// current estimate, solve the mixed program on the measurement mismatch
// dy = y - h(x), and apply the correction. Stops when ||dx||_2 < tol or
// after max_outer steps.
DecodeResult decode_iterative(const MeasurementModel& model, const DenseVector& y,
                              double eps, const DenseVector& x0,
                              int max_outer = 25, double tol = 1e-9,
                              const DenseVector* truth = nullptr,
                              const SolverOptions& opts = {});

}  // namespace sparsec
