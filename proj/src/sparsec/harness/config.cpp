#include "sparsec/harness/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sparsec {

ExperimentConfig power_defaults() {
  ExperimentConfig cfg;
  cfg.kind = "power";
  cfg.trials = 50;
  cfg.error_sigma = 0.5;
  cfg.sigma_grid = {0.0};
  cfg.rho_grid = {0.02};
  return cfg;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_list(const std::string& value, const std::string& key) {
  std::vector<double> out;
  std::istringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("config: bad number '" + item + "' in list " + key);
    }
  }
  if (out.empty()) throw ConfigError("config: empty list for " + key);
  return out;
}

int parse_int(const std::string& value, const std::string& key) {
  try {
    return std::stoi(value);
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer '" + value + "' for " + key);
  }
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    return std::stod(value);
  } catch (const std::exception&) {
    throw ConfigError("config: bad number '" + value + "' for " + key);
  }
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: bad boolean '" + value + "' for " + key);
}

std::string format_value(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_value(values[i]);
  }
  return out;
}

}  // namespace

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "kind") {
    if (value != "bounds" && value != "linear" && value != "power" &&
        value != "verify") {
      throw ConfigError("config: unknown kind '" + value + "'");
    }
    cfg.kind = value;
  } else if (key == "n") {
    cfg.n = parse_int(value, key);
  } else if (key == "m") {
    cfg.m = parse_int(value, key);
  } else if (key == "network") {
    cfg.network_file = value;
  } else if (key == "plan_n") {
    cfg.plan_n = parse_int(value, key);
  } else if (key == "bhat_threshold") {
    cfg.bhat_threshold = parse_double(value, key);
  } else if (key == "sigma_grid") {
    cfg.sigma_grid = parse_list(value, key);
  } else if (key == "rho_grid") {
    cfg.rho_grid = parse_list(value, key);
  } else if (key == "trials") {
    cfg.trials = parse_int(value, key);
    if (cfg.trials < 1) throw ConfigError("config: trials must be >= 1");
  } else if (key == "seed") {
    try {
      cfg.seed = std::stoull(value);
    } catch (const std::exception&) {
      throw ConfigError("config: bad seed '" + value + "'");
    }
  } else if (key == "out") {
    cfg.out_prefix = value;
  } else if (key == "eps_rule") {
    if (value != "chi98" && value != "fixed") {
      throw ConfigError("config: eps_rule must be chi98 or fixed");
    }
    cfg.eps_rule = value;
  } else if (key == "eps_fixed") {
    cfg.eps_fixed = parse_double(value, key);
  } else if (key == "error_sigma") {
    cfg.error_sigma = parse_double(value, key);
  } else if (key == "parallel") {
    cfg.parallel = parse_bool(value, key);
  } else if (key == "delta_grid") {
    cfg.delta_grid = parse_list(value, key);
  } else if (key == "varpi_delta") {
    cfg.varpi_delta = parse_double(value, key);
  } else if (key == "mu_grid") {
    cfg.mu_grid = parse_list(value, key);
  } else if (key == "verify_n") {
    cfg.verify_n = parse_int(value, key);
  } else if (key == "verify_m") {
    cfg.verify_m = parse_int(value, key);
  } else if (key == "verify_eps") {
    cfg.verify_eps = parse_double(value, key);
  } else if (key == "k_max") {
    cfg.k_max = parse_int(value, key);
  } else if (key == "verify_seeds") {
    cfg.verify_seeds = parse_int(value, key);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config_file(const std::string& path,
                                   ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  ExperimentConfig cfg = std::move(base);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) +
                        " is not key = value");
    }
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

// The out path and the parallel switch are execution knobs, not experiment
// identity: neither can change a result value, so neither is serialized.
// That keeps serial and parallel runs byte-identical on disk.
std::string canonical_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "kind=" << cfg.kind << "\n"
      << "n=" << cfg.n << "\n"
      << "m=" << cfg.m << "\n"
      << "network=" << cfg.network_file << "\n"
      << "plan_n=" << cfg.plan_n << "\n"
      << "bhat_threshold=" << format_value(cfg.bhat_threshold) << "\n"
      << "sigma_grid=" << format_list(cfg.sigma_grid) << "\n"
      << "rho_grid=" << format_list(cfg.rho_grid) << "\n"
      << "trials=" << cfg.trials << "\n"
      << "seed=" << cfg.seed << "\n"
      << "eps_rule=" << cfg.eps_rule << "\n"
      << "eps_fixed=" << format_value(cfg.eps_fixed) << "\n"
      << "error_sigma=" << format_value(cfg.error_sigma) << "\n"
      << "delta_grid=" << format_list(cfg.delta_grid) << "\n"
      << "varpi_delta=" << format_value(cfg.varpi_delta) << "\n"
      << "mu_grid=" << format_list(cfg.mu_grid) << "\n"
      << "verify_n=" << cfg.verify_n << "\n"
      << "verify_m=" << cfg.verify_m << "\n"
      << "verify_eps=" << format_value(cfg.verify_eps) << "\n"
      << "k_max=" << cfg.k_max << "\n"
      << "verify_seeds=" << cfg.verify_seeds << "\n";
  return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  // FNV-1a, 64-bit.
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char byte : canonical_config(cfg)) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace sparsec
