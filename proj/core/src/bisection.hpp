#pragma once

#include <cmath>
#include <limits>

namespace conical_ab::detail {

/// Bisection on [lo, hi] given f(lo) and f(hi) of opposite sign. Stops when
/// the bracket width falls below tol or cannot shrink further.
template <typename F>
double bisect(F&& f, double lo, double hi, double f_lo, double tol) {
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= tol) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace conical_ab::detail
