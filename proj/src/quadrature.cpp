#include "circdist/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace circdist {

double composite_simpson(const RealFn& f, double a, double b, std::size_t n) {
  if (n == 0) n = 2;
  if (n % 2 != 0) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n; i += 2) odd += f(a + h * static_cast<double>(i));
  for (std::size_t i = 2; i < n; i += 2) even += f(a + h * static_cast<double>(i));
  return (h / 3.0) * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

double simpson_refined(const RealFn& f, double a, double b, std::size_t n,
                       double tol, bool* converged) {
  const double s1 = composite_simpson(f, a, b, n);
  const double s2 = composite_simpson(f, a, b, 2 * n);
  if (converged) *converged = std::abs(s2 - s1) < tol;
  return s2;
}

namespace {

double adaptive_step(const RealFn& f, double a, double b, double fa, double fm,
                     double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const double err = (left + right - whole) / 15.0;
  if (depth <= 0 || std::abs(err) <= tol) return left + right + err;
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const RealFn& f, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

std::vector<double> cumulative_simpson(const RealFn& f, double a, double b,
                                       std::size_t n) {
  std::vector<double> out(n + 1, 0.0);
  const double h = (b - a) / static_cast<double>(n);
  double acc = 0.0;
  double f_lo = f(a);
  for (std::size_t i = 0; i < n; ++i) {
    const double x_hi = a + h * static_cast<double>(i + 1);
    const double x_mid = a + h * (static_cast<double>(i) + 0.5);
    const double f_hi = f(x_hi);
    acc += (h / 6.0) * (f_lo + 4.0 * f(x_mid) + f_hi);
    out[i + 1] = acc;
    f_lo = f_hi;
  }
  return out;
}

namespace {

// Golden-section maximisation of |f| on [lo, hi].
double golden_max_abs(const RealFn& f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = std::abs(f(c));
  double fd = std::abs(f(d));
  for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = std::abs(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = std::abs(f(d));
    }
  }
  return std::max(fc, fd);
}

}  // namespace

double grid_max(const RealFn& f, double a, double b, std::size_t n,
                bool periodic) {
  const std::size_t n2 = 2 * n;
  const double h2 = (b - a) / static_cast<double>(n2);
  double best = -1e308;
  double arg_best = a;
  const std::size_t last = periodic ? n2 - 1 : n2;
  for (std::size_t i = 0; i <= last; ++i) {
    const double x = a + h2 * static_cast<double>(i);
    const double v = f(x);
    if (v > best) {
      best = v;
      arg_best = x;
    }
  }
  const double lo = periodic ? arg_best - h2 : std::max(a, arg_best - h2);
  const double hi = periodic ? arg_best + h2 : std::min(b, arg_best + h2);
  constexpr double kInvPhi = 0.6180339887498949;
  double lo2 = lo, hi2 = hi;
  double c = hi2 - kInvPhi * (hi2 - lo2);
  double d = lo2 + kInvPhi * (hi2 - lo2);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && (hi2 - lo2) > 1e-14; ++it) {
    if (fc > fd) {
      hi2 = d;
      d = c;
      fd = fc;
      c = hi2 - kInvPhi * (hi2 - lo2);
      fc = f(c);
    } else {
      lo2 = c;
      c = d;
      fc = fd;
      d = lo2 + kInvPhi * (hi2 - lo2);
      fd = f(d);
    }
  }
  return std::max(best, std::max(fc, fd));
}

double grid_sup_abs(const RealFn& f, double a, double b, std::size_t n,
                    bool periodic, bool* converged) {
  const std::size_t n2 = 2 * n;
  const double h2 = (b - a) / static_cast<double>(n2);
  double best1 = 0.0, best2 = 0.0;
  double arg_best = a;
  const std::size_t last = periodic ? n2 - 1 : n2;
  for (std::size_t i = 0; i <= last; ++i) {
    const double x = a + h2 * static_cast<double>(i);
    const double v = std::abs(f(x));
    if (v > best2) {
      best2 = v;
      arg_best = x;
    }
    if (i % 2 == 0) best1 = std::max(best1, v);
  }
  if (converged) *converged = std::abs(best2 - best1) < 1e-6;
  // Periodic integrands extend past the endpoints; interval ones do not.
  const double lo = periodic ? arg_best - h2 : std::max(a, arg_best - h2);
  const double hi = periodic ? arg_best + h2 : std::min(b, arg_best + h2);
  const double polished = golden_max_abs(f, lo, hi);
  return std::max(best2, polished);
}

}  // namespace circdist
