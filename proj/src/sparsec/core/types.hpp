#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace sparsec {

using DenseMatrix = Eigen::MatrixXd;
using DenseVector = Eigen::VectorXd;

// Dimension mismatches are programming errors; the message carries both shapes.
class BadShape : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void check_shape(bool ok, const std::string& what) {
  if (!ok) throw BadShape(what);
}

inline std::string shape_of(const DenseMatrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace sparsec
