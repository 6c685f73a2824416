#pragma once

#include <optional>
#include <vector>

#include "sparsec/estimators/decode.hpp"

namespace sparsec {

// Gauss-Newton weighted least squares: x <- x + (H^T W H)^{-1} H^T W (y - h(x))
// with step halving (up to 10 times) whenever the weighted residual norm
// fails to decrease. Stops when the accepted step norm drops below 1e-10 or
// after 50 iterations. When known_bad is given, those rows are deleted before
// fitting (the oracle baseline that knows the gross-error support).
DecodeResult wls_estimate(const MeasurementModel& model, const DenseVector& y,
                          const DenseVector& weights, const DenseVector& x0,
                          const std::vector<int>* known_bad = nullptr);

struct BhatResult {
  DecodeResult fit;
  std::vector<int> removed;  // original row indices, in deletion order
};

// Largest-normalized-residual detector: WLS fit, normalize each residual by
// its estimated standard deviation sigma * sqrt(1 - K_ii) (K the hat
// matrix), delete the worst offender above the threshold, refit, repeat.
// Stops when every normalized residual is within the threshold or when the
// next deletion would cost the Jacobian its full column rank (RankLoss).
BhatResult bhat_test_estimate(const MeasurementModel& model, const DenseVector& y,
                              double sigma, double threshold, const DenseVector& x0);

}  // namespace sparsec
