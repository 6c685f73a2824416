#pragma once

#include "sparsec/core/types.hpp"

namespace sparsec {

// Smallest singular value of A, rows >= cols (the taller-than-wide case is
// the only one the decoders need). Jacobi SVD, accurate for small singular
// values.
double min_singular_value(const DenseMatrix& a);

// Induced l1 -> l1 operator norm: the largest column absolute sum.
double induced_l1_norm(const DenseMatrix& a);

// min ||A z||_1 over a uniform angular grid of the l1 unit sphere, for
// matrices with at most 3 columns. Sampling a minimum gives an upper bound
// on the true induced minimum, with grid-resolution error; test oracle use
// only. grid is the total number of sample directions (>= 1000).
double l1_induced_min_sampled(const DenseMatrix& a, int grid);

}  // namespace sparsec
