#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sparsec/cone/admm.hpp"
#include "sparsec/estimators/model.hpp"

namespace sparsec {

// Raised when the row relaxation loses meaning because the row-deleted
// matrix is too close to singular relative to the Jacobian perturbation.
class DegenerateRelaxation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VerificationOptions {
  SolverOptions solver;
  // The contraction denominator uses sigma_min(H0)/sqrt(n) as written in the
  // source derivation; sqrt(m) is the tighter variant behind this flag.
  bool use_m_denominator = false;
  bool parallel = true;
};

// Upper bound alpha_i on the fraction of l1 mass any nearby-Jacobian range
// vector can put on row i. With the row-deleted minimum singular value s and
// t' = 1/(s - (n-1) eps), solves
//   max +/- h_i^T x   s.t.  ||(H0 x)_without_i||_1 <= 1 + (n-1) eps t',
//                           ||x||_2 <= t'
// and returns the larger optimum plus eps t'. Requires s > (n-1) eps.
double row_alpha_bound(const DenseMatrix& h0, double eps, int row,
                       const SolverOptions& solver = {});

// All rows at once; the rows are independent and run in the work pool.
DenseVector row_alpha_bounds(const DenseMatrix& h0, double eps,
                             const VerificationOptions& opts = {});

// 1/(C+1) = sum of the k largest alpha_i / (1 + alpha_i). Rejects sums >= 1
// (C would drop to zero or below); values in (1/2, 1) still yield C <= 1,
// which callers interpret.
double balancedness_from_alphas(const DenseVector& alphas, int k);

struct ConvergenceCheck {
  double c = 0.0;
  double beta = 0.0;  // +inf when the certificate is undefined
  bool pass = false;  // C > 1 and beta < 1
};

// The contraction certificate at error sparsity k:
//   beta = [2(C+1)/(C-1)] * 2 n eps / (sigma_min(H0)/sqrt(n) - n eps).
ConvergenceCheck convergence_condition(const DenseMatrix& h0, double eps, int k,
                                       const VerificationOptions& opts = {});

struct VerificationReport {
  double eps_jacobian = 0.0;       // row-wise l2 bound on the Jacobian drift
  DenseVector alphas;
  std::vector<double> c_of_k;      // index k-1; NaN where C is undefined
  std::vector<double> beta_of_k;   // +inf where undefined
  std::vector<bool> pass_of_k;
  std::optional<int> certified_k;  // largest passing k
};

// Full pipeline at a linearization point: Jacobian, per-row alphas, C and
// beta for k = 1..k_max.
VerificationReport certify_region(const MeasurementModel& model,
                                  const DenseVector& x0, double eps, int k_max,
                                  const VerificationOptions& opts = {});

// Same report from a precomputed matrix; certify_region delegates here.
VerificationReport certify_matrix(const DenseMatrix& h0, double eps, int k_max,
                                  const VerificationOptions& opts = {});

}  // namespace sparsec
