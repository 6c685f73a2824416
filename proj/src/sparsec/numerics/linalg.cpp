#include "sparsec/numerics/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace sparsec {

double min_singular_value(const DenseMatrix& a) {
  check_shape(a.rows() >= a.cols(),
              "min_singular_value needs rows >= cols, got " + shape_of(a));
  if (!a.allFinite()) {
    throw std::invalid_argument("min_singular_value: matrix has non-finite entries");
  }
  Eigen::JacobiSVD<DenseMatrix> svd(a);
  return svd.singularValues()(a.cols() - 1);
}

double induced_l1_norm(const DenseMatrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

double l1_induced_min_sampled(const DenseMatrix& a, int grid) {
  check_shape(a.cols() >= 1 && a.cols() <= 3,
              "l1_induced_min_sampled supports 1 to 3 columns, got " + shape_of(a));
  if (grid < 1000) {
    throw std::invalid_argument("l1_induced_min_sampled needs grid >= 1000");
  }

  const auto value_at = [&](DenseVector z) {
    z /= z.lpNorm<1>();
    return (a * z).lpNorm<1>();
  };

  double best = std::numeric_limits<double>::infinity();
  switch (a.cols()) {
    case 1: {
      DenseVector z(1);
      z << 1.0;
      best = value_at(z);
      break;
    }
    case 2: {
      for (int i = 0; i < grid; ++i) {
        const double t = 2.0 * M_PI * i / grid;
        DenseVector z(2);
        z << std::cos(t), std::sin(t);
        best = std::min(best, value_at(z));
      }
      break;
    }
    case 3: {
      // Latitude-longitude grid with about `grid` points in total.
      const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(grid))));
      for (int i = 0; i <= side; ++i) {
        const double theta = M_PI * i / side;
        for (int j = 0; j < side; ++j) {
          const double phi = 2.0 * M_PI * j / side;
          DenseVector z(3);
          z << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
              std::cos(theta);
          if (z.lpNorm<1>() < 1e-15) continue;
          best = std::min(best, value_at(z));
        }
      }
      break;
    }
  }
  return best;
}

}  // namespace sparsec
