#include "sparsec/cone/lp_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sparsec {

namespace {

constexpr double kPivotTol = 1e-11;

// Dense two-phase simplex for min c^T v s.t. M v >= b, v >= 0, with Bland's
// rule everywhere so cycling is impossible. Sized for the tiny instances the
// oracle accepts.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<double>>& m_rows,
          const std::vector<double>& b, const std::vector<double>& cost)
      : rows_(m_rows.size()), structurals_(cost.size()) {
    // Each >= row gains a surplus variable; rows with negative rhs are
    // negated first, turning the surplus into a ready-made basic slack.
    // Remaining rows get an artificial for the phase-1 basis.
    cols_ = structurals_ + rows_;
    std::vector<int> artificial_of_row(rows_, -1);
    int artificials = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (b[i] < 0.0) continue;
      artificial_of_row[i] = artificials++;
    }
    const std::size_t total = cols_ + artificials;
    t_.assign(rows_, std::vector<double>(total + 1, 0.0));
    basis_.assign(rows_, -1);

    for (std::size_t i = 0; i < rows_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < structurals_; ++j) t_[i][j] = sign * m_rows[i][j];
      t_[i][structurals_ + i] = -sign;  // surplus column
      t_[i][total] = sign * b[i];
      if (artificial_of_row[i] >= 0) {
        t_[i][cols_ + artificial_of_row[i]] = 1.0;
        basis_[i] = static_cast<int>(cols_) + artificial_of_row[i];
      } else {
        basis_[i] = static_cast<int>(structurals_ + i);
      }
    }

    // Phase 1: drive the artificial sum to zero.
    std::vector<double> phase1(total, 0.0);
    for (std::size_t j = cols_; j < total; ++j) phase1[j] = 1.0;
    if (run(phase1, total) > 1e-7) {
      throw std::runtime_error("simplex: phase 1 failed to reach feasibility");
    }

    // Pivot any artificial still basic (at zero) out on a structural column.
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < static_cast<int>(cols_)) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (std::abs(t_[i][j]) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
    }

    // Phase 2 over the original columns; artificials are barred from entry.
    std::vector<double> phase2(total, 0.0);
    for (std::size_t j = 0; j < structurals_; ++j) phase2[j] = cost[j];
    objective_ = run(phase2, cols_);
  }

  double value(std::size_t j) const {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] == static_cast<int>(j)) return t_[i].back();
    }
    return 0.0;
  }

  double objective() const { return objective_; }

 private:
  void pivot(std::size_t row, std::size_t col) {
    const double p = t_[row][col];
    for (double& entry : t_[row]) entry /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || std::abs(t_[i][col]) < 1e-14) continue;
      const double factor = t_[i][col];
      for (std::size_t j = 0; j < t_[i].size(); ++j) {
        t_[i][j] -= factor * t_[row][j];
      }
    }
    basis_[row] = static_cast<int>(col);
  }

  // Minimizes cost over columns [0, enterable); returns the optimum value.
  double run(const std::vector<double>& cost, std::size_t enterable) {
    for (int guard = 0; guard < 100000; ++guard) {
      // Reduced costs from scratch each pass; the tableau is tiny and this
      // sidesteps drift in an incrementally maintained objective row.
      std::size_t entering = SIZE_MAX;
      for (std::size_t j = 0; j < enterable; ++j) {
        double reduced = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) {
          reduced -= cost_of(basis_[i], cost) * t_[i][j];
        }
        if (reduced < -kPivotTol) {
          entering = j;  // Bland: first eligible index
          break;
        }
      }
      if (entering == SIZE_MAX) break;

      std::size_t leaving = SIZE_MAX;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (t_[i][entering] <= kPivotTol) continue;
        const double ratio = t_[i].back() / t_[i][entering];
        const bool better =
            leaving == SIZE_MAX || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             basis_[i] < basis_[leaving]);
        if (better) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == SIZE_MAX) {
        throw std::runtime_error("simplex: unbounded objective");
      }
      pivot(leaving, entering);
    }

    double value = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      value += cost_of(basis_[i], cost) * t_[i].back();
    }
    return value;
  }

  static double cost_of(int var, const std::vector<double>& cost) {
    return var >= 0 && var < static_cast<int>(cost.size()) ? cost[var] : 0.0;
  }

  std::size_t rows_;
  std::size_t structurals_;
  std::size_t cols_;  // structurals + surplus columns
  std::vector<std::vector<double>> t_;
  std::vector<int> basis_;
  double objective_ = 0.0;
};

}  // namespace

LpSolution l1_regression_lp_oracle(const DenseVector& y, const DenseMatrix& h) {
  const Eigen::Index n = h.rows();
  const Eigen::Index m = h.cols();
  check_shape(y.size() == n, "lp oracle: y has length " + std::to_string(y.size()) +
                                 " but H is " + shape_of(h));
  if (n > 30 || m > 8) {
    throw std::invalid_argument("lp oracle: instance too large (limit 30x8), got " +
                                shape_of(h));
  }

  // Variables v = (x_plus[m], x_minus[m], t[n]); constraints
  //   H x_plus - H x_minus + t >= y
  //  -H x_plus + H x_minus + t >= -y
  const std::size_t vars = 2 * m + n;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (int sign = 0; sign < 2; ++sign) {
    const double s = sign == 0 ? 1.0 : -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::vector<double> row(vars, 0.0);
      for (Eigen::Index j = 0; j < m; ++j) {
        row[j] = s * h(i, j);
        row[m + j] = -s * h(i, j);
      }
      row[2 * m + i] = 1.0;
      rows.push_back(std::move(row));
      rhs.push_back(s * y(i));
    }
  }
  std::vector<double> cost(vars, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) cost[2 * m + i] = 1.0;

  const Tableau tableau(rows, rhs, cost);
  LpSolution out;
  out.x = DenseVector(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    out.x(j) = tableau.value(j) - tableau.value(m + j);
  }
  out.objective = tableau.objective();
  return out;
}

}  // namespace sparsec
