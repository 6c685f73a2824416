#pragma once

#include "sparsec/core/types.hpp"

namespace sparsec {

// Euclidean projection onto { z : ||z||_2 <= radius }.
DenseVector project_l2_ball(const DenseVector& v, double radius);

// Euclidean projection onto { z : ||z||_1 <= radius }, exact sort-and-shift
// algorithm (Duchi et al. style threshold on the sorted magnitudes).
DenseVector project_l1_ball(const DenseVector& v, double radius);

// Componentwise soft threshold, the prox of t * ||.||_1.
DenseVector soft_threshold(const DenseVector& v, double t);

}  // namespace sparsec
