// Command-line frontend: bounds / linear / power / verify sweeps plus a
// one-shot decoder for instances stored as JSON. Every sweep writes CSV
// tables and a JSON summary next to the chosen output prefix.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sparsec/estimators/decode.hpp"
#include "sparsec/harness/experiments.hpp"
#include "sparsec/harness/io.hpp"
#include "sparsec/power/cdf_parser.hpp"

namespace {

using sparsec::ExperimentConfig;
using sparsec::Table;

// Funnels every CLI flag through the same key=value override path the
// config file uses, so validation lives in one place.
struct OverrideSink {
  std::vector<std::pair<std::string, std::string>> entries;

  void wire(CLI::App* cmd, const std::string& flag, const std::string& key,
            const std::string& help) {
    cmd->add_option_function<std::string>(
        flag,
        [this, key](const std::string& value) {
          entries.emplace_back(key, value);
        },
        help);
  }
};

ExperimentConfig build_config(const std::string& config_path,
                              const OverrideSink& sink,
                              const std::string& kind) {
  ExperimentConfig cfg = kind == "power" ? sparsec::power_defaults()
                                         : ExperimentConfig{};
  if (!config_path.empty()) {
    cfg = sparsec::parse_config_file(config_path, std::move(cfg));
  }
  for (const auto& [key, value] : sink.entries) {
    sparsec::apply_override(cfg, key, value);
  }
  cfg.kind = kind;
  return cfg;
}

int column(const Table& table, const std::string& name) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (table.columns[i] == name) return static_cast<int>(i);
  }
  throw std::logic_error("no such column: " + name);
}

double column_mean(const Table& table, const std::string& name) {
  const int c = column(table, name);
  double sum = 0.0;
  int count = 0;
  for (const auto& row : table.rows) {
    if (std::isfinite(row[c])) {
      sum += row[c];
      ++count;
    }
  }
  return count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

double column_sum(const Table& table, const std::string& name) {
  const int c = column(table, name);
  double sum = 0.0;
  for (const auto& row : table.rows) sum += row[c];
  return sum;
}

void report_written(const std::string& path) {
  std::cout << "wrote " << path << "\n";
}

int run_bounds(const ExperimentConfig& cfg) {
  const auto result = sparsec::run_bounds_sweep(cfg);
  write_csv(cfg.out_prefix + "_alpha.csv", result.alpha_table, cfg);
  report_written(cfg.out_prefix + "_alpha.csv");
  write_csv(cfg.out_prefix + "_balancedness.csv", result.balancedness_table, cfg);
  report_written(cfg.out_prefix + "_balancedness.csv");
  write_summary_json(
      cfg.out_prefix + "_summary.json", cfg,
      {{"alpha_rows", static_cast<double>(result.alpha_table.rows.size())},
       {"balancedness_rows",
        static_cast<double>(result.balancedness_table.rows.size())},
       {"recoverable_rows", column_sum(result.balancedness_table, "recoverable")}});
  report_written(cfg.out_prefix + "_summary.json");
  return 0;
}

int run_linear(const ExperimentConfig& cfg) {
  const auto result = sparsec::run_linear_experiment(cfg);
  write_csv(cfg.out_prefix + "_trials.csv", result.per_trial, cfg);
  report_written(cfg.out_prefix + "_trials.csv");
  write_csv(cfg.out_prefix + "_cells.csv", result.per_cell, cfg);
  report_written(cfg.out_prefix + "_cells.csv");
  write_summary_json(
      cfg.out_prefix + "_summary.json", cfg,
      {{"cells", static_cast<double>(result.per_cell.rows.size())},
       {"failures_total", column_sum(result.per_cell, "failures")},
       {"mean_err_mixed", column_mean(result.per_cell, "mean_err_mixed")},
       {"mean_err_l1", column_mean(result.per_cell, "mean_err_l1")}});
  report_written(cfg.out_prefix + "_summary.json");
  return 0;
}

int run_power(const ExperimentConfig& cfg) {
  const auto result = sparsec::run_power_experiment(cfg);
  write_csv(cfg.out_prefix + "_trials.csv", result.per_trial, cfg);
  report_written(cfg.out_prefix + "_trials.csv");
  write_csv(cfg.out_prefix + "_traces.csv", result.traces, cfg);
  report_written(cfg.out_prefix + "_traces.csv");
  write_csv(cfg.out_prefix + "_cells.csv", result.per_cell, cfg);
  report_written(cfg.out_prefix + "_cells.csv");
  write_summary_json(
      cfg.out_prefix + "_summary.json", cfg,
      {{"cells", static_cast<double>(result.per_cell.rows.size())},
       {"failures_total", column_sum(result.per_cell, "failures")},
       {"mean_err_iter", column_mean(result.per_cell, "mean_err_iter")},
       {"mean_err_wls_oracle",
        column_mean(result.per_cell, "mean_err_wls_oracle")},
       {"mean_err_bhat", column_mean(result.per_cell, "mean_err_bhat")}});
  report_written(cfg.out_prefix + "_summary.json");
  return 0;
}

int run_verify(const ExperimentConfig& cfg) {
  const auto result = sparsec::run_verification_sweep(cfg);
  write_csv(cfg.out_prefix + "_balancedness.csv", result.balancedness, cfg);
  report_written(cfg.out_prefix + "_balancedness.csv");
  write_csv(cfg.out_prefix + "_alphas.csv", result.alphas, cfg);
  report_written(cfg.out_prefix + "_alphas.csv");

  std::vector<std::pair<std::string, double>> stats;
  stats.emplace_back("seeds", cfg.verify_seeds);
  const int kc = column(result.balancedness, "k");
  const int cc = column(result.balancedness, "c");
  const int pc = column(result.balancedness, "pass");
  for (int k = 1; k <= cfg.k_max; ++k) {
    double sum = 0.0;
    int count = 0;
    double passes = 0.0;
    for (const auto& row : result.balancedness.rows) {
      if (static_cast<int>(row[kc]) != k) continue;
      if (std::isfinite(row[cc])) {
        sum += row[cc];
        ++count;
      }
      passes += row[pc];
    }
    char key[32];
    std::snprintf(key, sizeof(key), "mean_c_k%d", k);
    stats.emplace_back(key, count > 0 ? sum / count
                                      : std::numeric_limits<double>::quiet_NaN());
    std::snprintf(key, sizeof(key), "pass_count_k%d", k);
    stats.emplace_back(key, passes);
  }
  write_summary_json(cfg.out_prefix + "_summary.json", cfg, stats);
  report_written(cfg.out_prefix + "_summary.json");
  return 0;
}

int run_decode(const ExperimentConfig& cfg, const std::string& instance_path,
               const std::string& out_path) {
  nlohmann::json doc;
  {
    std::ifstream in(instance_path);
    if (!in) throw sparsec::ConfigError("cannot open '" + instance_path + "'");
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw sparsec::ConfigError("bad instance JSON: " + std::string(e.what()));
    }
  }
  if (!doc.contains("h") || !doc.contains("y")) {
    throw sparsec::ConfigError("instance JSON needs fields 'h' and 'y'");
  }
  const auto& jh = doc["h"];
  const auto& jy = doc["y"];
  if (!jh.is_array() || jh.empty() || !jh[0].is_array() || !jy.is_array()) {
    throw sparsec::ConfigError("'h' must be a matrix and 'y' a vector");
  }
  const int rows = static_cast<int>(jh.size());
  const int cols = static_cast<int>(jh[0].size());
  sparsec::DenseMatrix h(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(jh[i].size()) != cols) {
      throw sparsec::ConfigError("'h' rows have unequal lengths");
    }
    for (int j = 0; j < cols; ++j) h(i, j) = jh[i][j].get<double>();
  }
  if (static_cast<int>(jy.size()) != rows) {
    throw sparsec::ConfigError("'y' length does not match 'h' rows");
  }
  sparsec::DenseVector y(rows);
  for (int i = 0; i < rows; ++i) y(i) = jy[i].get<double>();
  const double eps = doc.value("eps", 0.0);
  if (eps < 0) throw sparsec::ConfigError("'eps' must be nonnegative");

  const sparsec::DecodeResult result = sparsec::decode_linear(y, h, eps);

  char hash_buf[32];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                static_cast<unsigned long long>(sparsec::config_hash(cfg)));
  nlohmann::ordered_json out;
  out["artifact"] = sparsec::kArtifactVersion;
  out["config_hash"] = hash_buf;
  out["seed"] = cfg.seed;
  out["eps"] = eps;
  out["converged"] = result.solver.converged;
  out["iterations"] = result.solver.iterations;
  out["objective"] = result.solver.objective;
  std::vector<double> x_hat(result.x_hat.data(),
                            result.x_hat.data() + result.x_hat.size());
  out["x_hat"] = x_hat;

  const std::string body = out.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + out_path);
    file << body;
    report_written(out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse error correction toolkit"};
  app.require_subcommand(1);

  struct SubcommandSpec {
    CLI::App* cmd = nullptr;
    OverrideSink sink;
    std::string config_path;
  };

  auto add_common = [&](SubcommandSpec& spec, const char* name,
                        const char* help) {
    spec.cmd = app.add_subcommand(name, help);
    spec.cmd->add_option("--config", spec.config_path,
                         "key = value configuration file");
    spec.sink.wire(spec.cmd, "--seed", "seed", "random seed (default 42)");
    spec.sink.wire(spec.cmd, "--out", "out", "output path prefix");
    spec.cmd->add_flag_callback(
        "--serial",
        [&sink = spec.sink] { sink.entries.emplace_back("parallel", "false"); },
        "run trials on one thread");
  };

  SubcommandSpec bounds;
  add_common(bounds, "bounds", "recoverability and error-bound sweeps");
  bounds.sink.wire(bounds.cmd, "--delta-grid", "delta_grid",
                   "comma list of aspect ratios m/n");
  bounds.sink.wire(bounds.cmd, "--mu-grid", "mu_grid",
                   "comma list of sparsity ratios k/n");
  bounds.sink.wire(bounds.cmd, "--varpi-delta", "varpi_delta",
                   "aspect ratio for the balancedness table");

  SubcommandSpec linear;
  add_common(linear, "linear", "Monte Carlo on Gaussian linear models");
  linear.sink.wire(linear.cmd, "--n", "n", "measurement count");
  linear.sink.wire(linear.cmd, "--m", "m", "state dimension");
  linear.sink.wire(linear.cmd, "--sigma-grid", "sigma_grid",
                   "comma list of dense-noise levels");
  linear.sink.wire(linear.cmd, "--rho-grid", "rho_grid",
                   "comma list of gross-error fractions");
  linear.sink.wire(linear.cmd, "--trials", "trials", "trials per cell");
  linear.sink.wire(linear.cmd, "--error-sigma", "error_sigma",
                   "gross error standard deviation");
  linear.sink.wire(linear.cmd, "--eps-rule", "eps_rule", "chi98 or fixed");
  linear.sink.wire(linear.cmd, "--eps-fixed", "eps_fixed",
                   "radius when eps_rule = fixed");

  SubcommandSpec power;
  add_common(power, "power", "Monte Carlo on the network model");
  power.sink.wire(power.cmd, "--network", "network", "CDF network file");
  power.sink.wire(power.cmd, "--plan-n", "plan_n", "measurement count");
  power.sink.wire(power.cmd, "--sigma-grid", "sigma_grid",
                  "comma list of dense-noise levels");
  power.sink.wire(power.cmd, "--rho-grid", "rho_grid",
                  "comma list of gross-error fractions");
  power.sink.wire(power.cmd, "--trials", "trials", "trials per cell");
  power.sink.wire(power.cmd, "--error-sigma", "error_sigma",
                  "gross error standard deviation");
  power.sink.wire(power.cmd, "--bhat-threshold", "bhat_threshold",
                  "normalized residual deletion threshold");
  power.sink.wire(power.cmd, "--eps-rule", "eps_rule", "chi98 or fixed");
  power.sink.wire(power.cmd, "--eps-fixed", "eps_fixed",
                  "radius when eps_rule = fixed");

  SubcommandSpec verify;
  add_common(verify, "verify", "balancedness certification sweep");
  verify.sink.wire(verify.cmd, "--verify-n", "verify_n", "matrix rows");
  verify.sink.wire(verify.cmd, "--verify-m", "verify_m", "matrix columns");
  verify.sink.wire(verify.cmd, "--verify-eps", "verify_eps",
                   "row-wise Jacobian drift bound");
  verify.sink.wire(verify.cmd, "--k-max", "k_max", "largest sparsity checked");
  verify.sink.wire(verify.cmd, "--verify-seeds", "verify_seeds",
                   "number of random instances");

  SubcommandSpec decode;
  add_common(decode, "decode", "one-shot decode of a JSON instance");
  std::string instance_path;
  std::string decode_out;
  decode.cmd->add_option("--instance", instance_path,
                         "JSON file with fields h, y, eps")
      ->required();
  decode.cmd->add_option("--result", decode_out,
                         "write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  ExperimentConfig cfg;
  const SubcommandSpec* active = nullptr;
  std::string kind;
  if (bounds.cmd->parsed()) {
    active = &bounds;
    kind = "bounds";
  } else if (linear.cmd->parsed()) {
    active = &linear;
    kind = "linear";
  } else if (power.cmd->parsed()) {
    active = &power;
    kind = "power";
  } else if (verify.cmd->parsed()) {
    active = &verify;
    kind = "verify";
  } else {
    active = &decode;
    kind = "decode";
  }

  try {
    cfg = build_config(active->config_path, active->sink, kind);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (kind == "bounds") return run_bounds(cfg);
    if (kind == "linear") return run_linear(cfg);
    if (kind == "power") return run_power(cfg);
    if (kind == "verify") return run_verify(cfg);
    return run_decode(cfg, instance_path, decode_out);
  } catch (const sparsec::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const sparsec::CdfError& e) {
    // A missing or malformed network file is an input problem, not a solver
    // failure.
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
