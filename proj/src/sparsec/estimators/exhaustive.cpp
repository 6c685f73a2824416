#include "sparsec/estimators/exhaustive.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsec {

DenseVector l0_decode_bruteforce(const MeasurementModel& model, const DenseVector& y,
                                 int k_max, const std::vector<DenseVector>& candidates) {
  if (model.output_dim() > 8) {
    throw std::invalid_argument("l0_decode_bruteforce: more than 8 measurements");
  }
  if (candidates.empty() || candidates.size() > 10000) {
    throw std::invalid_argument("l0_decode_bruteforce: candidate count outside [1, 1e4]");
  }
  if (k_max < 0) throw std::invalid_argument("l0_decode_bruteforce: k_max < 0");
  check_shape(y.size() == model.output_dim(), "l0_decode_bruteforce: y length mismatch");

  const double zero_tol = 1e-9 * (1.0 + y.cwiseAbs().maxCoeff());
  int best_count = model.output_dim() + 1;
  double best_l2 = 0.0;
  std::size_t best_index = 0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const DenseVector r = y - model.evaluate(candidates[c]);
    int count = 0;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      if (std::abs(r(i)) > zero_tol) ++count;
    }
    const double l2 = r.norm();
    if (count < best_count || (count == best_count && l2 < best_l2)) {
      best_count = count;
      best_l2 = l2;
      best_index = c;
    }
  }
  return candidates[best_index];
}

bool check_l1_condition(const MeasurementModel& model, const DenseVector& x,
                        const DenseVector& x_alt, const std::vector<int>& k_set) {
  const DenseVector d = model.evaluate(x) - model.evaluate(x_alt);
  for (int i : k_set) {
    if (i < 0 || i >= d.size()) {
      throw std::invalid_argument("check_l1_condition: K index out of range");
    }
  }
  std::vector<bool> in_k(d.size(), false);
  for (int i : k_set) in_k[i] = true;
  double on_support = 0.0;
  double off_support = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    (in_k[i] ? on_support : off_support) += std::abs(d(i));
  }
  return on_support + 1e-12 < off_support;
}

}  // namespace sparsec
