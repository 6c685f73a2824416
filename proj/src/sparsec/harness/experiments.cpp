#include "sparsec/harness/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "sparsec/aep/bounds.hpp"
#include "sparsec/core/parallel.hpp"
#include "sparsec/estimators/decode.hpp"
#include "sparsec/estimators/wls.hpp"
#include "sparsec/numerics/random.hpp"
#include "sparsec/numerics/special.hpp"
#include "sparsec/power/cdf_parser.hpp"
#include "sparsec/verify/certify.hpp"

namespace sparsec {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Relative-error cutoff below which a trial counts as exact recovery in the
// per-cell summaries.
constexpr double kExactThreshold = 1e-5;

// Nominal operating box the sampled true states are drawn from: per-unit
// voltage magnitudes and relative angles in radians, spanning the solved
// operating point of the bundled 30-bus case.
constexpr double kVmagLo = 0.992;
constexpr double kVmagHi = 1.082;
constexpr double kVangLo = -0.3131;
constexpr double kVangHi = -0.0956;

// A cell's trials are streamed off (seed, sigma bits, rho bits, trial), so a
// cell's draws depend on its own coordinates only, never on grid layout.
RngState trial_stream(std::uint64_t seed, double sigma, double rho,
                      std::size_t trial) {
  return RngState::substream(seed, std::bit_cast<std::uint64_t>(sigma),
                             std::bit_cast<std::uint64_t>(rho), trial);
}

int support_size(double rho, int n) {
  const long k = std::lround(rho * n);
  return static_cast<int>(std::clamp(k, 0L, static_cast<long>(n)));
}

double finite_mean(const std::vector<double>& values) {
  double sum = 0.0;
  int count = 0;
  for (double v : values) {
    if (std::isfinite(v)) {
      sum += v;
      ++count;
    }
  }
  return count > 0 ? sum / count : kNan;
}

double exact_fraction(const std::vector<double>& errors) {
  int hits = 0;
  for (double e : errors) {
    if (std::isfinite(e) && e < kExactThreshold) ++hits;
  }
  return errors.empty() ? kNan
                        : static_cast<double>(hits) /
                              static_cast<double>(errors.size());
}

void check_grids(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.sigma_grid.empty()) throw ConfigError("sigma grid is empty");
  if (cfg.rho_grid.empty()) throw ConfigError("rho grid is empty");
}

}  // namespace

std::vector<int> sample_support(RngState& rng, int n, int count) {
  if (count < 0 || count > n) {
    throw std::invalid_argument("support size out of range");
  }
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < count; ++i) {
    const int j = i + rng.uniform_int(n - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> support(pool.begin(), pool.begin() + count);
  std::sort(support.begin(), support.end());
  return support;
}

double noise_radius(const ExperimentConfig& cfg, double sigma, int dim) {
  if (cfg.eps_rule == "fixed") return cfg.eps_fixed;
  if (cfg.eps_rule != "chi98") {
    throw ConfigError("unknown eps rule: " + cfg.eps_rule);
  }
  if (sigma == 0.0) return 0.0;
  return sigma * chi_quantile(dim, 0.98);
}

BoundsSweepResult run_bounds_sweep(const ExperimentConfig& cfg) {
  if (cfg.delta_grid.empty()) throw ConfigError("delta grid is empty");
  if (cfg.mu_grid.empty()) throw ConfigError("mu grid is empty");

  BoundsSweepResult out;
  out.alpha_table.columns = {"delta", "alpha_star"};
  for (double delta : cfg.delta_grid) {
    out.alpha_table.add_row({delta, alpha_star(delta)});
  }

  const double alpha = alpha_star(cfg.varpi_delta);
  out.balancedness_table.columns = {"mu", "c", "recoverable", "varpi"};
  for (double mu : cfg.mu_grid) {
    const Balancedness bal = balancedness_c(mu, alpha);
    const std::optional<double> w = varpi(cfg.varpi_delta, mu);
    out.balancedness_table.add_row(
        {mu, bal.c, bal.recoverable ? 1.0 : 0.0, w ? *w : kNan});
  }
  return out;
}

LinearExperimentResult run_linear_experiment(const ExperimentConfig& cfg) {
  check_grids(cfg);
  if (cfg.n <= cfg.m) throw ConfigError("linear experiment needs n > m");

  const int n = cfg.n;
  const int m = cfg.m;
  const std::size_t trials = static_cast<std::size_t>(cfg.trials);

  LinearExperimentResult out;
  out.per_trial.columns = {"sigma", "rho",       "trial",    "eps",
                           "err_mixed", "err_l1", "ok_mixed", "ok_l1"};
  out.per_cell.columns = {"sigma",          "rho",         "trials",
                          "failures",       "mean_err_mixed", "mean_err_l1",
                          "frac_mixed_exact"};

  struct TrialRow {
    double err_mixed = kNan;
    double err_l1 = kNan;
    bool ok_mixed = false;
    bool ok_l1 = false;
    bool failed = true;
  };

  for (double sigma : cfg.sigma_grid) {
    const double eps = noise_radius(cfg, sigma, n);
    for (double rho : cfg.rho_grid) {
      const int k = support_size(rho, n);
      std::vector<TrialRow> rows(trials);

      parallel_for(trials, cfg.parallel, [&](std::size_t t) {
        TrialRow& row = rows[t];
        try {
          RngState rng = trial_stream(cfg.seed, sigma, rho, t);
          const DenseMatrix h = sample_gaussian(rng, n, m, 1.0);
          DenseVector x(m);
          for (int i = 0; i < m; ++i) x(i) = rng.uniform(-1.0, 1.0);

          DenseVector y = h * x;
          for (int idx : sample_support(rng, n, k)) {
            y(idx) += cfg.error_sigma * rng.gaussian();
          }
          if (sigma > 0.0) {
            for (int i = 0; i < n; ++i) y(i) += sigma * rng.gaussian();
          }

          const DecodeResult mixed = decode_linear(y, h, eps);
          const DecodeResult plain = decode_linear(y, h, 0.0);
          const double scale = x.norm();
          row.err_mixed = (mixed.x_hat - x).norm() / scale;
          row.err_l1 = (plain.x_hat - x).norm() / scale;
          row.ok_mixed = mixed.solver.converged;
          row.ok_l1 = plain.solver.converged;
          row.failed = false;
        } catch (...) {
          // Counted per cell; the row keeps its NaN markers.
        }
      });

      std::vector<double> errs_mixed, errs_l1;
      errs_mixed.reserve(trials);
      errs_l1.reserve(trials);
      int failures = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialRow& row = rows[t];
        out.per_trial.add_row({sigma, rho, static_cast<double>(t), eps,
                               row.err_mixed, row.err_l1,
                               row.ok_mixed ? 1.0 : 0.0,
                               row.ok_l1 ? 1.0 : 0.0});
        errs_mixed.push_back(row.err_mixed);
        errs_l1.push_back(row.err_l1);
        if (row.failed) ++failures;
      }
      out.per_cell.add_row({sigma, rho, static_cast<double>(trials),
                            static_cast<double>(failures),
                            finite_mean(errs_mixed), finite_mean(errs_l1),
                            exact_fraction(errs_mixed)});
    }
  }
  return out;
}

PowerExperimentResult run_power_experiment(const ExperimentConfig& cfg) {
  check_grids(cfg);
  PowerNetwork net = parse_cdf_file(cfg.network_file);
  MeasurementPlan plan = default_plan(net, cfg.plan_n);
  const PowerModel model(std::move(net), std::move(plan));

  const int n = model.output_dim();
  const int buses = model.network().bus_count();
  const std::size_t trials = static_cast<std::size_t>(cfg.trials);
  const DenseVector x0 = StateVector::flat_start(buses).to_flat();

  PowerExperimentResult out;
  out.per_trial.columns = {"sigma",    "rho",   "trial",     "eps",
                           "err_iter", "iters", "converged", "err_wls_oracle",
                           "err_bhat", "bhat_removed"};
  out.traces.columns = {"sigma", "rho", "trial", "iter", "rel_err"};
  out.per_cell.columns = {"sigma",
                          "rho",
                          "trials",
                          "failures",
                          "mean_err_iter",
                          "mean_err_wls_oracle",
                          "mean_err_bhat",
                          "frac_iter_exact"};

  struct TrialRow {
    double err_iter = kNan;
    double iters = kNan;
    double converged = 0.0;
    double err_wls = kNan;
    double err_bhat = kNan;
    double bhat_removed = kNan;
    bool failed = false;
    std::vector<double> trace;
  };

  for (double sigma : cfg.sigma_grid) {
    const double eps = noise_radius(cfg, sigma, n);
    for (double rho : cfg.rho_grid) {
      const int k = support_size(rho, n);
      std::vector<TrialRow> rows(trials);

      parallel_for(trials, cfg.parallel, [&](std::size_t t) {
        TrialRow& row = rows[t];
        RngState rng = trial_stream(cfg.seed, sigma, rho, t);

        StateVector truth = StateVector::flat_start(buses);
        for (int i = 0; i < truth.vmag.size(); ++i) {
          truth.vmag(i) = rng.uniform(kVmagLo, kVmagHi);
        }
        for (int i = 0; i < truth.vang.size(); ++i) {
          truth.vang(i) = rng.uniform(kVangLo, kVangHi);
        }
        const DenseVector x_true = truth.to_flat();
        const double scale = x_true.norm();

        DenseVector y = model.evaluate(x_true);
        const std::vector<int> support = sample_support(rng, n, k);
        for (int idx : support) y(idx) += cfg.error_sigma * rng.gaussian();
        if (sigma > 0.0) {
          for (int i = 0; i < n; ++i) y(i) += sigma * rng.gaussian();
        }

        try {
          const DecodeResult it =
              decode_iterative(model, y, eps, x0, 25, 1e-9, &x_true);
          row.err_iter = (it.x_hat - x_true).norm() / scale;
          row.iters = it.iterations;
          row.converged = it.status == DecodeStatus::Converged ? 1.0 : 0.0;
          row.trace = it.trace;
        } catch (...) {
          row.failed = true;
        }

        try {
          const DenseVector weights = DenseVector::Ones(n);
          const DecodeResult fit =
              wls_estimate(model, y, weights, x0, &support);
          row.err_wls = (fit.x_hat - x_true).norm() / scale;
        } catch (...) {
          row.failed = true;
        }

        try {
          const BhatResult det =
              bhat_test_estimate(model, y, sigma, cfg.bhat_threshold, x0);
          row.err_bhat = (det.fit.x_hat - x_true).norm() / scale;
          row.bhat_removed = static_cast<double>(det.removed.size());
        } catch (...) {
          row.failed = true;
        }
      });

      std::vector<double> errs_iter, errs_wls, errs_bhat;
      errs_iter.reserve(trials);
      errs_wls.reserve(trials);
      errs_bhat.reserve(trials);
      int failures = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialRow& row = rows[t];
        out.per_trial.add_row({sigma, rho, static_cast<double>(t), eps,
                               row.err_iter, row.iters, row.converged,
                               row.err_wls, row.err_bhat, row.bhat_removed});
        for (std::size_t i = 0; i < row.trace.size(); ++i) {
          out.traces.add_row({sigma, rho, static_cast<double>(t),
                              static_cast<double>(i + 1), row.trace[i]});
        }
        errs_iter.push_back(row.err_iter);
        errs_wls.push_back(row.err_wls);
        errs_bhat.push_back(row.err_bhat);
        if (row.failed) ++failures;
      }
      out.per_cell.add_row({sigma, rho, static_cast<double>(trials),
                            static_cast<double>(failures),
                            finite_mean(errs_iter), finite_mean(errs_wls),
                            finite_mean(errs_bhat),
                            exact_fraction(errs_iter)});
    }
  }
  return out;
}

VerificationSweepResult run_verification_sweep(const ExperimentConfig& cfg) {
  if (cfg.verify_seeds < 1) throw ConfigError("verify_seeds must be >= 1");
  if (cfg.k_max < 1) throw ConfigError("k_max must be >= 1");
  if (cfg.verify_eps < 0) throw ConfigError("verify_eps must be >= 0");

  VerificationSweepResult out;
  out.balancedness.columns = {"seed_index", "k", "c", "beta", "pass"};
  out.alphas.columns = {"seed_index", "row", "alpha"};

  VerificationOptions vopts;
  vopts.parallel = cfg.parallel;

  for (int s = 0; s < cfg.verify_seeds; ++s) {
    RngState rng = RngState::substream(cfg.seed, static_cast<std::uint64_t>(s));
    const DenseMatrix h0 =
        sample_gaussian(rng, cfg.verify_n, cfg.verify_m, 1.0);
    try {
      const VerificationReport rep =
          certify_matrix(h0, cfg.verify_eps, cfg.k_max, vopts);
      for (int i = 0; i < rep.alphas.size(); ++i) {
        out.alphas.add_row(
            {static_cast<double>(s), static_cast<double>(i), rep.alphas(i)});
      }
      for (int k = 1; k <= cfg.k_max; ++k) {
        out.balancedness.add_row({static_cast<double>(s),
                                  static_cast<double>(k), rep.c_of_k[k - 1],
                                  rep.beta_of_k[k - 1],
                                  rep.pass_of_k[k - 1] ? 1.0 : 0.0});
      }
    } catch (const DegenerateRelaxation&) {
      // No certificate for this instance: emit marked rows and move on.
      for (int k = 1; k <= cfg.k_max; ++k) {
        out.balancedness.add_row({static_cast<double>(s),
                                  static_cast<double>(k), kNan,
                                  std::numeric_limits<double>::infinity(),
                                  0.0});
      }
    }
  }
  return out;
}

}  // namespace sparsec
