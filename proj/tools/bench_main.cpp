// Compares the work-pool and single-thread paths of the two hot kernels
// (per-row certification and Monte Carlo decoding) and checks that both
// produce identical results, which is what lets the tests run either way.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "sparsec/harness/experiments.hpp"
#include "sparsec/numerics/random.hpp"
#include "sparsec/verify/certify.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

void print_row(const char* kernel, double serial_s, double pool_s, bool same) {
  std::printf("%-28s %10.3f s %10.3f s %8.2fx   %s\n", kernel, serial_s, pool_s,
              serial_s / pool_s, same ? "identical" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs work-pool benchmark"};
  int rows = 100;
  int cols = 30;
  int trials = 20;
  app.add_option("--rows", rows, "certification matrix rows");
  app.add_option("--cols", cols, "certification matrix columns");
  app.add_option("--trials", trials, "Monte Carlo trials per cell");
  CLI11_PARSE(app, argc, argv);

  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "pool", "speedup");

  {
    sparsec::RngState rng(7);
    const sparsec::DenseMatrix h0 =
        sparsec::sample_gaussian(rng, rows, cols, 1.0);
    sparsec::VerificationOptions opts;

    opts.parallel = false;
    auto start = std::chrono::steady_clock::now();
    const sparsec::DenseVector serial =
        sparsec::row_alpha_bounds(h0, 1e-3, opts);
    const double serial_s = seconds_since(start);

    opts.parallel = true;
    start = std::chrono::steady_clock::now();
    const sparsec::DenseVector pooled =
        sparsec::row_alpha_bounds(h0, 1e-3, opts);
    const double pool_s = seconds_since(start);

    print_row("row_alpha_bounds", serial_s, pool_s,
              (serial - pooled).cwiseAbs().maxCoeff() == 0.0);
  }

  {
    sparsec::ExperimentConfig cfg;
    cfg.n = 100;
    cfg.m = 40;
    cfg.trials = trials;
    cfg.sigma_grid = {0.5};
    cfg.rho_grid = {0.1};

    cfg.parallel = false;
    auto start = std::chrono::steady_clock::now();
    const auto serial = sparsec::run_linear_experiment(cfg);
    const double serial_s = seconds_since(start);

    cfg.parallel = true;
    start = std::chrono::steady_clock::now();
    const auto pooled = sparsec::run_linear_experiment(cfg);
    const double pool_s = seconds_since(start);

    print_row("run_linear_experiment", serial_s, pool_s,
              render_csv(serial.per_trial, cfg) ==
                  render_csv(pooled.per_trial, cfg));
  }

  return 0;
}
