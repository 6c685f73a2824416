#pragma once

#include <functional>

namespace sparsec {

struct ScalarMin {
  double argmin = 0.0;
  double value = 0.0;
};

// Golden-section search on [lo, hi]. For a unimodal f the returned argmin is
// within tol of the true minimizer.
ScalarMin minimize_unimodal(const std::function<double(double)>& f, double lo,
                            double hi, double tol);

}  // namespace sparsec
