#include "circdist/root_finding.hpp"

#include <cmath>

#include "circdist/errors.hpp"

namespace circdist {

double solve_increasing(const std::function<double(double)>& g,
                        const std::function<double(double)>& dg, double lo,
                        double hi, double bisect_tol, double newton_tol,
                        int max_iter) {
  double glo = g(lo);
  double ghi = g(hi);
  if (glo > 0.0 || ghi < 0.0)
    throw ConvergenceFailure("solve_increasing: bracket does not straddle the root");
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;

  int used = 0;
  while (hi - lo > bisect_tol) {
    if (++used > max_iter)
      throw ConvergenceFailure("solve_increasing: bisection exceeded iteration cap");
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if (gm < 0.0)
      lo = mid;
    else
      hi = mid;
  }

  double y = 0.5 * (lo + hi);
  for (; used < max_iter; ++used) {
    const double gy = g(y);
    const double dy = dg(y);
    if (dy <= 0.0 || !std::isfinite(dy)) break;  // fall back to the bracket midpoint
    const double step = gy / dy;
    double y_next = y - step;
    if (y_next < lo || y_next > hi) {
      // Newton left the safeguard bracket; keep bisecting instead.
      if (gy < 0.0)
        lo = y;
      else
        hi = y;
      y_next = 0.5 * (lo + hi);
    }
    if (std::abs(y_next - y) < newton_tol) return y_next;
    y = y_next;
  }
  return y;
}

}  // namespace circdist
