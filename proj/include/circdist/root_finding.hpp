#pragma once

#include <functional>

#include "circdist/defaults.hpp"

namespace circdist {

/// Solve g(y) = 0 for a strictly increasing g on a bracket [lo, hi] with
/// g(lo) <= 0 <= g(hi). Bisection narrows the bracket to `bisect_tol`, then
/// Newton polishes to `newton_tol` using dg. Throws ConvergenceFailure when
/// the iteration cap is exhausted without meeting the tolerance, which
/// signals non-monotone numerics upstream.
double solve_increasing(const std::function<double(double)>& g,
                        const std::function<double(double)>& dg, double lo,
                        double hi,
                        double bisect_tol = defaults::kInvertBisectTol,
                        double newton_tol = defaults::kInvertNewtonTol,
                        int max_iter = defaults::kInvertMaxIter);

}  // namespace circdist
