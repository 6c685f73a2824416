#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsec {

inline constexpr const char* kArtifactVersion = "sparsec 0.1.0";

// Everything an experiment run depends on. The canonical serialization of
// this struct is hashed into every output file, so reruns are checkable.
struct ExperimentConfig {
  std::string kind = "linear";  // bounds | linear | power | verify

  // Linear experiment: y = H x + e + v with H Gaussian n x m.
  int n = 150;
  int m = 60;

  // Power experiment.
  std::string network_file = "data/ieee30.cdf";
  int plan_n = 100;
  double bhat_threshold = 3.0;

  // Shared Monte Carlo knobs.
  std::vector<double> sigma_grid{0.0};
  std::vector<double> rho_grid{0.02};
  int trials = 100;
  std::uint64_t seed = 42;
  std::string out_prefix = "results";
  std::string eps_rule = "chi98";  // chi98 | fixed
  double eps_fixed = 0.0;
  double error_sigma = 4.0;  // gross error stddev
  bool parallel = true;

  // Bounds sweep.
  std::vector<double> delta_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double varpi_delta = 0.5;
  std::vector<double> mu_grid{0.002, 0.004, 0.006, 0.008, 0.010,
                              0.012, 0.014, 0.016, 0.018, 0.020};

  // Verification sweep.
  int verify_n = 200;
  int verify_m = 50;
  double verify_eps = 1e-3;
  int k_max = 10;
  int verify_seeds = 10;
};

// Defaults for the 30-bus runs: 50 trials, gross errors N(0, 0.5^2), the
// in-repo network file.
ExperimentConfig power_defaults();

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Key-value text: one `key = value` per line, '#' comments, lists as
// comma-separated values. Unknown keys are errors. Values land on top of
// `base`, so callers pick which defaults unlisted keys keep.
ExperimentConfig parse_config_file(const std::string& path,
                                   ExperimentConfig base = {});
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

// Stable, complete serialization (and its FNV-1a hash) used in file headers.
std::string canonical_config(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace sparsec
