#include "sparsec/power/network.hpp"

#include <cmath>
#include <complex>

namespace sparsec {

int PowerNetwork::bus_position(int external_id) const {
  for (std::size_t i = 0; i < buses.size(); ++i) {
    if (buses[i].id == external_id) return static_cast<int>(i);
  }
  return -1;
}

StateVector StateVector::flat_start(int bus_count) {
  StateVector s;
  s.vmag = DenseVector::Ones(bus_count);
  s.vang = DenseVector::Zero(bus_count - 1);
  return s;
}

StateVector StateVector::from_flat(const DenseVector& v, int bus_count) {
  check_shape(v.size() == 2 * bus_count - 1,
              "StateVector::from_flat: expected length " +
                  std::to_string(2 * bus_count - 1) + ", got " +
                  std::to_string(v.size()));
  StateVector s;
  s.vmag = v.head(bus_count);
  s.vang = v.tail(bus_count - 1);
  return s;
}

DenseVector StateVector::to_flat() const {
  DenseVector v(vmag.size() + vang.size());
  v << vmag, vang;
  return v;
}

DenseVector StateVector::full_angles(int slack_index) const {
  DenseVector full(vmag.size());
  Eigen::Index j = 0;
  for (Eigen::Index i = 0; i < full.size(); ++i) {
    full(i) = i == slack_index ? 0.0 : vang(j++);
  }
  return full;
}

AdmittanceTables build_admittance(const PowerNetwork& net) {
  AdmittanceTables tables;
  const std::size_t nb = net.branches.size();
  tables.series_mag.resize(nb);
  tables.series_ang.resize(nb);
  tables.shunt_mag.assign(net.buses.size(), 0.0);
  tables.shunt_ang.assign(net.buses.size(), 0.0);
  tables.incident.assign(net.buses.size(), {});

  std::vector<std::complex<double>> shunt(net.buses.size(), {0.0, 0.0});
  for (std::size_t k = 0; k < nb; ++k) {
    const Branch& br = net.branches[k];
    if (br.r == 0.0 && br.x == 0.0) {
      throw ZeroImpedanceBranch("branch " + std::to_string(k) + " (" +
                                std::to_string(net.buses[br.from].id) + "-" +
                                std::to_string(net.buses[br.to].id) +
                                ") has zero series impedance");
    }
    std::complex<double> y = 1.0 / std::complex<double>(br.r, br.x);
    // Off-nominal turns ratio scales the coupling; applied symmetrically so
    // the magnitude table stays symmetric in (i, j).
    y /= br.tap;
    tables.series_mag[k] = std::abs(y);
    tables.series_ang[k] = std::arg(y);
    tables.incident[br.from].push_back({static_cast<int>(k), br.to});
    tables.incident[br.to].push_back({static_cast<int>(k), br.from});

    const std::complex<double> half_charging(0.0, 0.5 * br.charging_b);
    shunt[br.from] += half_charging;
    shunt[br.to] += half_charging;
  }
  for (std::size_t i = 0; i < shunt.size(); ++i) {
    tables.shunt_mag[i] = std::abs(shunt[i]);
    tables.shunt_ang[i] = shunt[i] == 0.0 ? 0.0 : std::arg(shunt[i]);
  }
  return tables;
}

}  // namespace sparsec
