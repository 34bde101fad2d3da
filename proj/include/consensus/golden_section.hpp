#pragma once

#include <cmath>
#include <functional>

namespace consensus {

struct ScalarMinimum {
  double x;
  double value;
  int evaluations;
};

/// Golden-section search for a unimodal f on [lo, hi]. Stops when the bracket
/// is narrower than `tol`. Returns the best point actually evaluated rather
/// than the bracket midpoint, which matters for minima at a kink.
inline ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                             double tol, int max_iter = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  ScalarMinimum best{fc <= fd ? c : d, fc <= fd ? fc : fd, 2};

  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      if (fc < best.value) best = {c, fc, best.evaluations};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      if (fd < best.value) best = {d, fd, best.evaluations};
    }
    ++best.evaluations;
  }
  return best;
}

}  // namespace consensus
