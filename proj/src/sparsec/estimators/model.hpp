#pragma once

#include <utility>
#include <vector>

#include "sparsec/core/types.hpp"
#include "sparsec/power/measurement.hpp"

namespace sparsec {

// A differentiable measurement map x -> h(x). States and measurements are
// flat vectors; power-system callers flatten StateVector via to_flat.
class MeasurementModel {
 public:
  virtual ~MeasurementModel() = default;
  virtual int output_dim() const = 0;
  virtual int state_dim() const = 0;
  virtual DenseVector evaluate(const DenseVector& x) const = 0;
  virtual DenseMatrix jacobian_at(const DenseVector& x) const = 0;
};

// h(x) = H x.
class LinearModel final : public MeasurementModel {
 public:
  explicit LinearModel(DenseMatrix h) : h_(std::move(h)) {}
  int output_dim() const override { return static_cast<int>(h_.rows()); }
  int state_dim() const override { return static_cast<int>(h_.cols()); }
  DenseVector evaluate(const DenseVector& x) const override { return h_ * x; }
  DenseMatrix jacobian_at(const DenseVector&) const override { return h_; }
  const DenseMatrix& matrix() const { return h_; }

 private:
  DenseMatrix h_;
};

// AC power-flow measurements on a parsed network, under a fixed plan.
class PowerModel final : public MeasurementModel {
 public:
  PowerModel(PowerNetwork net, MeasurementPlan plan)
      : net_(std::move(net)),
        tables_(build_admittance(net_)),
        plan_(std::move(plan)) {
    validate_plan(net_, plan_);
  }

  int output_dim() const override { return static_cast<int>(plan_.size()); }
  int state_dim() const override { return net_.state_dim(); }
  DenseVector evaluate(const DenseVector& x) const override {
    return measure(net_, tables_, StateVector::from_flat(x, net_.bus_count()), plan_);
  }
  DenseMatrix jacobian_at(const DenseVector& x) const override {
    return jacobian(net_, tables_, StateVector::from_flat(x, net_.bus_count()), plan_);
  }

  const PowerNetwork& network() const { return net_; }
  const AdmittanceTables& tables() const { return tables_; }
  const MeasurementPlan& plan() const { return plan_; }

 private:
  PowerNetwork net_;
  AdmittanceTables tables_;
  MeasurementPlan plan_;
};

// View of another model restricted to a subset of its output rows; the
// bad-data baselines use it to delete measurements.
class RowSubsetModel final : public MeasurementModel {
 public:
  RowSubsetModel(const MeasurementModel& base, std::vector<int> rows)
      : base_(base), rows_(std::move(rows)) {}

  int output_dim() const override { return static_cast<int>(rows_.size()); }
  int state_dim() const override { return base_.state_dim(); }
  DenseVector evaluate(const DenseVector& x) const override {
    const DenseVector full = base_.evaluate(x);
    DenseVector out(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) out(k) = full(rows_[k]);
    return out;
  }
  DenseMatrix jacobian_at(const DenseVector& x) const override {
    const DenseMatrix full = base_.jacobian_at(x);
    DenseMatrix out(rows_.size(), full.cols());
    for (std::size_t k = 0; k < rows_.size(); ++k) out.row(k) = full.row(rows_[k]);
    return out;
  }

 private:
  const MeasurementModel& base_;
  std::vector<int> rows_;
};

}  // namespace sparsec
