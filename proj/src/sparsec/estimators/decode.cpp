#include "sparsec/estimators/decode.hpp"

#include "sparsec/numerics/linalg.hpp"

namespace sparsec {

DecodeResult decode_linear(const DenseVector& y, const DenseMatrix& h, double eps,
                           const SolverOptions& opts) {
  MixedSolution sol = solve_mixed(y, h, eps, opts);
  DecodeResult out;
  out.residual = y - h * sol.x;
  out.x_hat = std::move(sol.x);
  out.iterations = 1;
  out.status = sol.status.converged ? DecodeStatus::Converged
                                    : DecodeStatus::MaxIterations;
  out.solver = sol.status;
  return out;
}

DecodeResult decode_iterative(const MeasurementModel& model, const DenseVector& y,
                              double eps, const DenseVector& x0, int max_outer,
                              double tol, const DenseVector* truth,
                              const SolverOptions& opts) {
  check_shape(y.size() == model.output_dim(),
              "decode_iterative: y length " + std::to_string(y.size()) +
                  " vs model output " + std::to_string(model.output_dim()));
  check_shape(x0.size() == model.state_dim(),
              "decode_iterative: x0 length " + std::to_string(x0.size()) +
                  " vs model state " + std::to_string(model.state_dim()));

  DecodeResult out;
  out.x_hat = x0;
  out.status = DecodeStatus::MaxIterations;
  for (int k = 1; k <= max_outer; ++k) {
    const DenseVector dy = y - model.evaluate(out.x_hat);
    const DenseMatrix h_local = model.jacobian_at(out.x_hat);
    if (min_singular_value(h_local) < 1e-10) {
      out.status = DecodeStatus::SingularJacobian;
      break;
    }
    MixedSolution step = solve_mixed(dy, h_local, eps, opts);
    out.solver = step.status;
    out.x_hat += step.x;
    out.iterations = k;
    if (truth != nullptr) {
      out.trace.push_back((out.x_hat - *truth).norm() / truth->norm());
    }
    if (step.x.norm() < tol) {
      out.status = DecodeStatus::Converged;
      break;
    }
  }
  out.residual = y - model.evaluate(out.x_hat);
  return out;
}

}  // namespace sparsec
