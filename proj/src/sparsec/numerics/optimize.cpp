#include "sparsec/numerics/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsec {

ScalarMin minimize_unimodal(const std::function<double(double)>& f, double lo,
                            double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("minimize_unimodal needs lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("minimize_unimodal needs tol > 0");

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  return {mid, f(mid)};
}

}  // namespace sparsec
