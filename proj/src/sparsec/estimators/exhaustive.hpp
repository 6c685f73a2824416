#pragma once

#include <vector>

#include "sparsec/estimators/model.hpp"

namespace sparsec {

// Exhaustive l0 decoding over an enumerated candidate grid: returns the
// candidate whose residual against y has the fewest nonzero entries (ties
// broken by smaller l2 residual, then by grid order). k_max is the assumed
// error sparsity and participates only in the size guards; instances are
// capped at 8 measurements and 10^4 candidates.
DenseVector l0_decode_bruteforce(const MeasurementModel& model, const DenseVector& y,
                                 int k_max, const std::vector<DenseVector>& candidates);

// The l1 recovery condition between two states for error support K:
// ||(h(x) - h(x_alt))_K||_1 < ||(h(x) - h(x_alt))_notK||_1, compared with a
// 1e-12 slack so the all-zero difference counts as a failure.
bool check_l1_condition(const MeasurementModel& model, const DenseVector& x,
                        const DenseVector& x_alt, const std::vector<int>& k_set);

}  // namespace sparsec
