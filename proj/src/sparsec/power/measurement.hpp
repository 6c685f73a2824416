#pragma once

#include <vector>

#include "sparsec/power/network.hpp"

namespace sparsec {

enum class MeasKind { ActiveInjection, ReactiveInjection, ActiveFlow, ReactiveFlow };

// One measurement. Injections carry the bus in `i`; flows carry the metered
// end in `i`, the far end in `j`, and the branch they ride on.
struct Measurement {
  MeasKind kind = MeasKind::ActiveInjection;
  int i = 0;
  int j = -1;
  int branch = -1;
};

using MeasurementPlan = std::vector<Measurement>;

// Throws BadShape on duplicate descriptors, out-of-range buses, or flow
// entries whose branch does not join (i, j).
void validate_plan(const PowerNetwork& net, const MeasurementPlan& plan);

// All 2k' injections (active then reactive, bus order), then flow P/Q pairs
// on the lowest-indexed branches, truncated once n_target entries exist.
MeasurementPlan default_plan(const PowerNetwork& net, int n_target);

// Evaluates the AC power-flow measurement equations in polar form. With
// series admittance (Y, theta) of the branch from i to j and shunt
// (Y_s, theta_s) at bus i:
//
//   P_ij = E_i E_j Y cos(theta + d_i - d_j) - E_i^2 Y cos(theta)
//          + E_i^2 Y_s cos(theta_s)
//   Q_ij = same with sin throughout
//
// and the injection at bus i sums the series part of P_ij (resp. Q_ij) over
// all incident branches plus a single shunt term. At a flat profile with
// zero shunts every series part cancels termwise, so the whole vector is
// exactly zero. The slack angle is fixed at zero.
DenseVector measure(const PowerNetwork& net, const AdmittanceTables& tables,
                    const StateVector& x, const MeasurementPlan& plan);

// Same equations over explicit per-bus angles (no slack convention); used by
// the rotation-invariance tests and internally by measure().
DenseVector measure_full(const PowerNetwork& net, const AdmittanceTables& tables,
                         const DenseVector& vmag, const DenseVector& vang_all,
                         const MeasurementPlan& plan);

// Analytic Jacobian, n x (2k'-1): derivatives with respect to every E and
// every non-slack angle, columns ordered like StateVector::to_flat.
DenseMatrix jacobian(const PowerNetwork& net, const AdmittanceTables& tables,
                     const StateVector& x, const MeasurementPlan& plan);

// Central-difference Jacobian on the flat state; test oracle.
DenseMatrix jacobian_fd(const PowerNetwork& net, const AdmittanceTables& tables,
                        const StateVector& x, const MeasurementPlan& plan,
                        double step = 1e-6);

}  // namespace sparsec
