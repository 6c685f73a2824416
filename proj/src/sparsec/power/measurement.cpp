#include "sparsec/power/measurement.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

namespace sparsec {

namespace {

void check_bus(const PowerNetwork& net, int bus) {
  if (bus < 0 || bus >= net.bus_count()) {
    throw BadShape("measurement references bus index " + std::to_string(bus));
  }
}

}  // namespace

void validate_plan(const PowerNetwork& net, const MeasurementPlan& plan) {
  std::set<std::tuple<int, int, int, int>> seen;
  for (const Measurement& m : plan) {
    check_bus(net, m.i);
    if (m.kind == MeasKind::ActiveFlow || m.kind == MeasKind::ReactiveFlow) {
      check_bus(net, m.j);
      if (m.branch < 0 || m.branch >= static_cast<int>(net.branches.size())) {
        throw BadShape("flow measurement references branch " +
                       std::to_string(m.branch));
      }
      const Branch& br = net.branches[m.branch];
      const bool joins = (br.from == m.i && br.to == m.j) ||
                         (br.from == m.j && br.to == m.i);
      if (!joins) {
        throw BadShape("branch " + std::to_string(m.branch) +
                       " does not join buses " + std::to_string(m.i) + ", " +
                       std::to_string(m.j));
      }
    }
    if (!seen.insert({static_cast<int>(m.kind), m.i, m.j, m.branch}).second) {
      throw BadShape("duplicate measurement descriptor");
    }
  }
}

MeasurementPlan default_plan(const PowerNetwork& net, int n_target) {
  const int max_n = 2 * net.bus_count() + 2 * static_cast<int>(net.branches.size());
  if (n_target < 1 || n_target > max_n) {
    throw std::invalid_argument("default_plan: n_target " + std::to_string(n_target) +
                                " outside [1, " + std::to_string(max_n) + "]");
  }
  MeasurementPlan plan;
  plan.reserve(n_target);
  for (int i = 0; i < net.bus_count() && static_cast<int>(plan.size()) < n_target; ++i) {
    plan.push_back({MeasKind::ActiveInjection, i, -1, -1});
  }
  for (int i = 0; i < net.bus_count() && static_cast<int>(plan.size()) < n_target; ++i) {
    plan.push_back({MeasKind::ReactiveInjection, i, -1, -1});
  }
  for (int b = 0; static_cast<int>(plan.size()) < n_target; ++b) {
    const Branch& br = net.branches[b];
    plan.push_back({MeasKind::ActiveFlow, br.from, br.to, b});
    if (static_cast<int>(plan.size()) < n_target) {
      plan.push_back({MeasKind::ReactiveFlow, br.from, br.to, b});
    }
  }
  return plan;
}

namespace {

struct Terms {
  double p = 0.0;
  double q = 0.0;
};

// Series part of the flow from i toward j over the given branch.
Terms series_flow(const AdmittanceTables& t, int branch, double ei, double ej,
                  double di, double dj) {
  const double y = t.series_mag[branch];
  const double ang = t.series_ang[branch] + di - dj;
  Terms out;
  out.p = ei * ej * y * std::cos(ang) - ei * ei * y * std::cos(t.series_ang[branch]);
  out.q = ei * ej * y * std::sin(ang) - ei * ei * y * std::sin(t.series_ang[branch]);
  return out;
}

Terms shunt_terms(const AdmittanceTables& t, int bus, double ei) {
  Terms out;
  out.p = ei * ei * t.shunt_mag[bus] * std::cos(t.shunt_ang[bus]);
  out.q = ei * ei * t.shunt_mag[bus] * std::sin(t.shunt_ang[bus]);
  return out;
}

}  // namespace

DenseVector measure_full(const PowerNetwork& net, const AdmittanceTables& tables,
                         const DenseVector& vmag, const DenseVector& vang_all,
                         const MeasurementPlan& plan) {
  check_shape(vmag.size() == net.bus_count() && vang_all.size() == net.bus_count(),
              "measure_full: state sized " + std::to_string(vmag.size()) + "/" +
                  std::to_string(vang_all.size()) + " for " +
                  std::to_string(net.bus_count()) + " buses");
  DenseVector out(static_cast<Eigen::Index>(plan.size()));
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const Measurement& m = plan[k];
    switch (m.kind) {
      case MeasKind::ActiveInjection:
      case MeasKind::ReactiveInjection: {
        Terms total = shunt_terms(tables, m.i, vmag(m.i));
        for (const auto& [branch, other] : tables.incident[m.i]) {
          const Terms f = series_flow(tables, branch, vmag(m.i), vmag(other),
                                      vang_all(m.i), vang_all(other));
          total.p += f.p;
          total.q += f.q;
        }
        out(k) = m.kind == MeasKind::ActiveInjection ? total.p : total.q;
        break;
      }
      case MeasKind::ActiveFlow:
      case MeasKind::ReactiveFlow: {
        const Terms f = series_flow(tables, m.branch, vmag(m.i), vmag(m.j),
                                    vang_all(m.i), vang_all(m.j));
        const Terms s = shunt_terms(tables, m.i, vmag(m.i));
        out(k) = m.kind == MeasKind::ActiveFlow ? f.p + s.p : f.q + s.q;
        break;
      }
    }
  }
  return out;
}

DenseVector measure(const PowerNetwork& net, const AdmittanceTables& tables,
                    const StateVector& x, const MeasurementPlan& plan) {
  return measure_full(net, tables, x.vmag, x.full_angles(net.slack_index), plan);
}

namespace {

// Accumulates the four partials of one series term into a Jacobian row.
// Columns: E of every bus first, then angles of non-slack buses.
class RowWriter {
 public:
  RowWriter(DenseMatrix& jac, Eigen::Index row, const PowerNetwork& net)
      : jac_(jac), row_(row), net_(net) {}

  void add_mag(int bus, double value) { jac_(row_, bus) += value; }

  void add_ang(int bus, double value) {
    if (bus == net_.slack_index) return;
    const int offset = bus < net_.slack_index ? bus : bus - 1;
    jac_(row_, net_.bus_count() + offset) += value;
  }

 private:
  DenseMatrix& jac_;
  Eigen::Index row_;
  const PowerNetwork& net_;
};

void add_series_partials(RowWriter& row, const AdmittanceTables& t, int branch,
                         int i, int j, double ei, double ej, double di,
                         double dj, bool active) {
  const double y = t.series_mag[branch];
  const double base = t.series_ang[branch];
  const double ang = base + di - dj;
  if (active) {
    row.add_mag(i, ej * y * std::cos(ang) - 2.0 * ei * y * std::cos(base));
    row.add_mag(j, ei * y * std::cos(ang));
    row.add_ang(i, -ei * ej * y * std::sin(ang));
    row.add_ang(j, ei * ej * y * std::sin(ang));
  } else {
    row.add_mag(i, ej * y * std::sin(ang) - 2.0 * ei * y * std::sin(base));
    row.add_mag(j, ei * y * std::sin(ang));
    row.add_ang(i, ei * ej * y * std::cos(ang));
    row.add_ang(j, -ei * ej * y * std::cos(ang));
  }
}

void add_shunt_partials(RowWriter& row, const AdmittanceTables& t, int bus,
                        double ei, bool active) {
  const double trig = active ? std::cos(t.shunt_ang[bus]) : std::sin(t.shunt_ang[bus]);
  row.add_mag(bus, 2.0 * ei * t.shunt_mag[bus] * trig);
}

}  // namespace

DenseMatrix jacobian(const PowerNetwork& net, const AdmittanceTables& tables,
                     const StateVector& x, const MeasurementPlan& plan) {
  const DenseVector angles = x.full_angles(net.slack_index);
  DenseMatrix jac = DenseMatrix::Zero(static_cast<Eigen::Index>(plan.size()),
                                      net.state_dim());
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const Measurement& m = plan[k];
    RowWriter row(jac, static_cast<Eigen::Index>(k), net);
    const bool active =
        m.kind == MeasKind::ActiveInjection || m.kind == MeasKind::ActiveFlow;
    if (m.kind == MeasKind::ActiveInjection ||
        m.kind == MeasKind::ReactiveInjection) {
      add_shunt_partials(row, tables, m.i, x.vmag(m.i), active);
      for (const auto& [branch, other] : tables.incident[m.i]) {
        add_series_partials(row, tables, branch, m.i, other, x.vmag(m.i),
                            x.vmag(other), angles(m.i), angles(other), active);
      }
    } else {
      add_shunt_partials(row, tables, m.i, x.vmag(m.i), active);
      add_series_partials(row, tables, m.branch, m.i, m.j, x.vmag(m.i),
                          x.vmag(m.j), angles(m.i), angles(m.j), active);
    }
  }
  return jac;
}

DenseMatrix jacobian_fd(const PowerNetwork& net, const AdmittanceTables& tables,
                        const StateVector& x, const MeasurementPlan& plan,
                        double step) {
  if (step < 1e-8 || step > 1e-4) {
    throw std::invalid_argument("jacobian_fd: step outside [1e-8, 1e-4]");
  }
  const DenseVector flat = x.to_flat();
  DenseMatrix jac(static_cast<Eigen::Index>(plan.size()), flat.size());
  for (Eigen::Index col = 0; col < flat.size(); ++col) {
    DenseVector lo = flat, hi = flat;
    lo(col) -= step;
    hi(col) += step;
    const DenseVector f_lo =
        measure(net, tables, StateVector::from_flat(lo, net.bus_count()), plan);
    const DenseVector f_hi =
        measure(net, tables, StateVector::from_flat(hi, net.bus_count()), plan);
    jac.col(col) = (f_hi - f_lo) / (2.0 * step);
  }
  return jac;
}

}  // namespace sparsec
