#ifndef FRIEDRICHS_DETAIL_BISECT_HPP
#define FRIEDRICHS_DETAIL_BISECT_HPP

#include <cmath>
#include <functional>

namespace friedrichs::detail {

/// Bisection for a decreasing function with f(lo) > 0 > f(hi).  Runs to a
/// fixed relative interval width so two solvers driving the same function
/// land on the same root; shared by the determinant solver and the discrete
/// oracle to keep their roots identical on equal grids.
inline double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi,
                                double width_tol) {
  while (hi - lo > width_tol * std::max(1.0, std::max(std::abs(lo), std::abs(hi)))) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at rounding resolution
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace friedrichs::detail

#endif
