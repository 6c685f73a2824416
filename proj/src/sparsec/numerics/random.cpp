#include "sparsec/numerics/random.hpp"

#include <stdexcept>

namespace sparsec {

DenseMatrix sample_gaussian(RngState& rng, int rows, int cols, double stddev) {
  if (stddev < 0.0) throw std::invalid_argument("sample_gaussian needs stddev >= 0");
  DenseMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      out(i, j) = stddev == 0.0 ? 0.0 : stddev * rng.gaussian();
    }
  }
  return out;
}

}  // namespace sparsec
