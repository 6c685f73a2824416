#pragma once

#include "sparsec/core/rng.hpp"
#include "sparsec/core/types.hpp"

namespace sparsec {

// rows x cols matrix of independent N(0, stddev^2) draws, filled row by row
// so the result depends only on the generator state, not on storage order.
DenseMatrix sample_gaussian(RngState& rng, int rows, int cols, double stddev);

}  // namespace sparsec
