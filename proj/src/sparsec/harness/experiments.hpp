#pragma once

#include "sparsec/core/rng.hpp"
#include "sparsec/harness/config.hpp"
#include "sparsec/harness/io.hpp"

namespace sparsec {

// Draws count distinct indices from [0, n) by partial Fisher-Yates shuffle
// and returns them sorted. Used for gross-error supports.
std::vector<int> sample_support(RngState& rng, int n, int count);

// Noise-ball radius for a given dense-noise level: the 0.98 chi quantile in
// dim dimensions scaled by sigma ("chi98"), or the fixed value from the
// config ("fixed"). Zero sigma gives a zero radius under the quantile rule.
double noise_radius(const ExperimentConfig& cfg, double sigma, int dim);

// alpha_star over the delta grid, plus C and the error-amplification factor
// over the mu grid at cfg.varpi_delta.
//   alpha_table:        delta, alpha_star
//   balancedness_table: mu, c, recoverable, varpi (nan when not recoverable)
struct BoundsSweepResult {
  Table alpha_table;
  Table balancedness_table;
};
BoundsSweepResult run_bounds_sweep(const ExperimentConfig& cfg);

// Monte Carlo over the (sigma, rho) grid on random Gaussian linear models.
// Each trial draws its own generator from (seed, sigma bits, rho bits,
// trial), so results for one cell do not move when the grid around it
// changes. Per trial, the mixed decoder runs next to plain l1 regression
// (the eps = 0 special case).
//   per_trial: sigma, rho, trial, eps, err_mixed, err_l1, ok_mixed, ok_l1
//   per_cell:  sigma, rho, trials, failures, mean_err_mixed, mean_err_l1,
//              frac_mixed_exact   (exact = relative error below 1e-5)
struct LinearExperimentResult {
  Table per_trial;
  Table per_cell;
};
LinearExperimentResult run_linear_experiment(const ExperimentConfig& cfg);

// Same grid protocol on the nonlinear network model: iterative decoding
// from a flat start against two baselines, weighted least squares with the
// gross-error rows deleted up front (the oracle) and the residual-deletion
// detector. True states are drawn per trial from the nominal operating box.
//   per_trial: sigma, rho, trial, eps, err_iter, iters, converged,
//              err_wls_oracle, err_bhat, bhat_removed
//   traces:    sigma, rho, trial, iter, rel_err
//   per_cell:  sigma, rho, trials, failures, mean_err_iter,
//              mean_err_wls_oracle, mean_err_bhat, frac_iter_exact
struct PowerExperimentResult {
  Table per_trial;
  Table traces;
  Table per_cell;
};
PowerExperimentResult run_power_experiment(const ExperimentConfig& cfg);

// Certification sweep over verify_seeds random standard-Gaussian matrices:
// per-row alpha bounds, then C and beta for k = 1..k_max on each instance.
//   balancedness: seed_index, k, c, beta, pass
//   alphas:       seed_index, row, alpha
struct VerificationSweepResult {
  Table balancedness;
  Table alphas;
};
VerificationSweepResult run_verification_sweep(const ExperimentConfig& cfg);

}  // namespace sparsec
