#include "sparsec/estimators/wls.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "sparsec/numerics/linalg.hpp"

namespace sparsec {

namespace {

constexpr int kMaxIterations = 50;
constexpr int kMaxHalvings = 10;
constexpr double kStepTol = 1e-10;

DecodeResult gauss_newton(const MeasurementModel& model, const DenseVector& y,
                          const DenseVector& weights, const DenseVector& x0) {
  const DenseVector root_w = weights.cwiseSqrt();
  const auto weighted_ssr = [&](const DenseVector& x) {
    return (root_w.asDiagonal() * (y - model.evaluate(x))).squaredNorm();
  };

  DecodeResult out;
  out.x_hat = x0;
  out.status = DecodeStatus::MaxIterations;
  double current = weighted_ssr(out.x_hat);
  for (int iter = 1; iter <= kMaxIterations; ++iter) {
    const DenseMatrix h = model.jacobian_at(out.x_hat);
    if (min_singular_value(h) < 1e-10) {
      out.status = DecodeStatus::SingularJacobian;
      break;
    }
    const DenseMatrix hw = root_w.asDiagonal() * h;
    const DenseVector rw = root_w.asDiagonal() * (y - model.evaluate(out.x_hat));
    const DenseVector step = (hw.transpose() * hw)
                                 .llt()
                                 .solve(hw.transpose() * rw);

    double scale = 1.0;
    double candidate_ssr = 0.0;
    bool improved = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
      candidate_ssr = weighted_ssr(out.x_hat + scale * step);
      if (candidate_ssr < current) {
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    out.iterations = iter;
    if (!improved) break;  // stationary to working precision

    out.x_hat += scale * step;
    current = candidate_ssr;
    if ((scale * step).norm() < kStepTol) {
      out.status = DecodeStatus::Converged;
      break;
    }
  }
  out.residual = y - model.evaluate(out.x_hat);
  return out;
}

}  // namespace

DecodeResult wls_estimate(const MeasurementModel& model, const DenseVector& y,
                          const DenseVector& weights, const DenseVector& x0,
                          const std::vector<int>* known_bad) {
  check_shape(y.size() == model.output_dim(),
              "wls_estimate: y length " + std::to_string(y.size()) +
                  " vs model output " + std::to_string(model.output_dim()));
  check_shape(weights.size() == y.size(), "wls_estimate: weights length mismatch");
  if (weights.minCoeff() <= 0.0) {
    throw std::invalid_argument("wls_estimate: weights must be positive");
  }

  if (known_bad == nullptr || known_bad->empty()) {
    return gauss_newton(model, y, weights, x0);
  }

  std::vector<int> keep;
  keep.reserve(y.size());
  for (int i = 0; i < static_cast<int>(y.size()); ++i) {
    if (std::find(known_bad->begin(), known_bad->end(), i) == known_bad->end()) {
      keep.push_back(i);
    }
  }
  RowSubsetModel subset(model, keep);
  DenseVector y_keep(keep.size()), w_keep(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    y_keep(k) = y(keep[k]);
    w_keep(k) = weights(keep[k]);
  }
  DecodeResult fit = gauss_newton(subset, y_keep, w_keep, x0);
  fit.residual = y - model.evaluate(fit.x_hat);
  return fit;
}

BhatResult bhat_test_estimate(const MeasurementModel& model, const DenseVector& y,
                              double sigma, double threshold, const DenseVector& x0) {
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("bhat_test_estimate: threshold must be positive");
  }
  const int n = model.output_dim();
  const int m = model.state_dim();
  const double sigma_eff = std::max(sigma, 1e-8);

  std::vector<int> active(n);
  std::iota(active.begin(), active.end(), 0);

  BhatResult result;
  while (true) {
    RowSubsetModel subset(model, active);
    DenseVector y_act(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) y_act(k) = y(active[k]);
    result.fit = gauss_newton(subset, y_act,
                              DenseVector::Ones(active.size()), x0);
    if (result.fit.status == DecodeStatus::SingularJacobian) break;

    const DenseVector r = y_act - subset.evaluate(result.fit.x_hat);
    const DenseMatrix h = subset.jacobian_at(result.fit.x_hat);
    const DenseMatrix thin_q =
        Eigen::HouseholderQR<DenseMatrix>(h).householderQ() *
        DenseMatrix::Identity(h.rows(), h.cols());

    int worst = -1;
    double worst_value = threshold;
    for (std::size_t k = 0; k < active.size(); ++k) {
      const double leverage = thin_q.row(k).squaredNorm();
      const double variance = sigma_eff * sigma_eff * (1.0 - leverage);
      if (variance <= sigma_eff * sigma_eff * 1e-12) continue;  // pinned row
      const double normalized = std::abs(r(k)) / std::sqrt(variance);
      if (normalized > worst_value) {
        worst_value = normalized;
        worst = static_cast<int>(k);
      }
    }
    if (worst < 0) break;  // everything within threshold

    // Stop rather than delete when redundancy is exhausted.
    if (static_cast<int>(active.size()) - 1 < m) {
      result.fit.status = DecodeStatus::RankLoss;
      break;
    }
    std::vector<int> next = active;
    next.erase(next.begin() + worst);
    RowSubsetModel probe(model, next);
    if (min_singular_value(probe.jacobian_at(result.fit.x_hat)) < 1e-8) {
      result.fit.status = DecodeStatus::RankLoss;
      break;
    }
    result.removed.push_back(active[worst]);
    active = std::move(next);
  }

  result.fit.residual = y - model.evaluate(result.fit.x_hat);
  return result;
}

}  // namespace sparsec
