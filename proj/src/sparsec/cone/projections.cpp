#include "sparsec/cone/projections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sparsec {

namespace {
// Feasibility guard with a few ulps of slack so projecting a point that a
// previous projection just produced returns it unchanged (idempotence).
constexpr double kBoundarySlack = 1.0 + 4e-16;
}  // namespace

DenseVector project_l2_ball(const DenseVector& v, double radius) {
  if (radius < 0.0) throw std::invalid_argument("project_l2_ball needs radius >= 0");
  const double norm = v.norm();
  if (norm <= radius * kBoundarySlack) return v;
  if (radius == 0.0) return DenseVector::Zero(v.size());
  return v * (radius / norm);
}

DenseVector project_l1_ball(const DenseVector& v, double radius) {
  if (radius < 0.0) throw std::invalid_argument("project_l1_ball needs radius >= 0");
  if (v.lpNorm<1>() <= radius * kBoundarySlack) return v;
  if (radius == 0.0) return DenseVector::Zero(v.size());

  std::vector<double> mags(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) mags[i] = std::abs(v(i));
  std::sort(mags.begin(), mags.end(), std::greater<double>());

  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    cumulative += mags[j];
    const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
    if (j + 1 == mags.size() || mags[j + 1] <= candidate) {
      theta = candidate;
      break;
    }
  }

  DenseVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double shrunk = std::abs(v(i)) - theta;
    out(i) = shrunk > 0.0 ? std::copysign(shrunk, v(i)) : 0.0;
  }
  return out;
}

DenseVector soft_threshold(const DenseVector& v, double t) {
  if (t < 0.0) throw std::invalid_argument("soft_threshold needs t >= 0");
  DenseVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double shrunk = std::abs(v(i)) - t;
    out(i) = shrunk > 0.0 ? std::copysign(shrunk, v(i)) : 0.0;
  }
  return out;
}

}  // namespace sparsec
