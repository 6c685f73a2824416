#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sparsec/core/types.hpp"

namespace sparsec {

enum class BusType { PQ, PV, Slack };

struct Bus {
  int id = 0;          // external bus number from the data file
  BusType type = BusType::PQ;
  double base_kv = 0.0;
};

struct Branch {
  int from = 0;  // bus indices into PowerNetwork::buses, not external ids
  int to = 0;
  double r = 0.0;          // series resistance, per unit
  double x = 0.0;          // series reactance, per unit
  double charging_b = 0.0; // total line charging susceptance, per unit
  double tap = 1.0;        // transformer turns ratio; 1.0 for plain lines
};

struct PowerNetwork {
  std::vector<Bus> buses;
  std::vector<Branch> branches;
  int slack_index = 0;
  double base_mva = 100.0;

  int bus_count() const { return static_cast<int>(buses.size()); }
  // State dimension: one magnitude per bus plus one angle per non-slack bus.
  int state_dim() const { return 2 * bus_count() - 1; }
  int bus_position(int external_id) const;  // -1 when absent
};

// Voltage state split into magnitudes (all buses) and angles (slack bus
// excluded; its angle is pinned at zero). The flat form is [E; delta].
struct StateVector {
  DenseVector vmag;  // k' entries
  DenseVector vang;  // k' - 1 entries, radians, slack omitted

  static StateVector flat_start(int bus_count);
  static StateVector from_flat(const DenseVector& v, int bus_count);
  DenseVector to_flat() const;
  // Angles for all buses with the slack entry reinserted as zero.
  DenseVector full_angles(int slack_index) const;
};

// Polar admittance tables feeding the measurement equations: per-branch
// series admittance 1/(r + jx) as (magnitude, angle), per-bus shunt from the
// pi-model line-charging halves, and a bus -> incident-branch adjacency.
struct AdmittanceTables {
  std::vector<double> series_mag;  // per branch
  std::vector<double> series_ang;
  std::vector<double> shunt_mag;  // per bus
  std::vector<double> shunt_ang;
  // bus -> list of (branch index, index of the bus at the other end)
  std::vector<std::vector<std::pair<int, int>>> incident;
};

class ZeroImpedanceBranch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AdmittanceTables build_admittance(const PowerNetwork& net);

}  // namespace sparsec
