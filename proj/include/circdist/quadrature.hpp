#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace circdist {

using RealFn = std::function<double(double)>;

/// Composite Simpson rule with n subintervals (n rounded up to even).
double composite_simpson(const RealFn& f, double a, double b, std::size_t n);

/// Composite Simpson at n and 2n subintervals; returns the refined value and
/// sets `converged` (when non-null) to whether the two estimates agree to tol.
double simpson_refined(const RealFn& f, double a, double b, std::size_t n,
                       double tol = 1e-6, bool* converged = nullptr);

/// Adaptive Simpson with absolute tolerance. Recursion depth is capped; the
/// estimate at the cap is used without further subdivision.
double adaptive_simpson(const RealFn& f, double a, double b, double tol,
                        int max_depth = 40);

/// Cumulative antiderivative table: values[i] = int_a^{x_i} f for the uniform
/// closed grid x_i = a + i*(b-a)/n, i = 0..n. Each cell is integrated with a
/// single Simpson step using the cell midpoint, so the integrand is evaluated
/// at 2n+1 points.
std::vector<double> cumulative_simpson(const RealFn& f, double a, double b,
                                       std::size_t n);

/// Sup of |f| over a uniform grid with one refinement doubling and a local
/// golden-section polish around the best grid point. `periodic` controls
/// whether the endpoint b is treated as identified with a.
double grid_sup_abs(const RealFn& f, double a, double b, std::size_t n,
                    bool periodic, bool* converged = nullptr);

/// Signed maximum of f over a uniform grid, with the same refinement and
/// polish strategy as grid_sup_abs.
double grid_max(const RealFn& f, double a, double b, std::size_t n,
                bool periodic);

}  // namespace circdist
