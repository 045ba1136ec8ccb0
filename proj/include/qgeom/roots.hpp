#pragma once

#include <cmath>
#include <optional>
#include <utility>

namespace qgeom {

/// Bisection on a sign change of f over [lo, hi]. Returns nullopt when the
/// endpoint values share a sign; otherwise the midpoint of the final bracket,
/// whose width is below xtol.
template <class F>
std::optional<double> bisect_sign_change(F&& f, double lo, double hi, double xtol) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) return std::nullopt;

  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
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

}  // namespace qgeom
