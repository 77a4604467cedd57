#pragma once

#include <vector>

#include "circdist/diffeo.hpp"
#include "circdist/metrics.hpp"

namespace circdist {

/// Sampled nonlinearity f''/f' with its mean; circle maps are realisable
/// exactly when the mean vanishes.
struct NonlinearityVector {
  GridFunction H;
  double mean = 0.0;
};

NonlinearityVector phi(const DiffeoMap& f,
                       std::size_t n_samples = defaults::kQuadIntervals);

/// Inverse of the nonlinearity map: F(x) = int_0^x H, C = int_0^1 exp F,
/// f = (1/C) int_0^x exp F. Circle targets require |mean H| < 1e-9.
DiffeoMap phi_inverse(const NonlinearityVector& H, Domain domain);

/// Factorisation f = [rotation o] u_1 o ... o u_N with every step inside the
/// epsilon-ball, witnessing coarse boundedness. Circle maps are split into a
/// rotation prefix and a stabiliser part, which is the piece fragmented.
struct FragmentationPath {
  long N = 0;
  double epsilon = 0.0;
  double M = 0.0;  // the input bound: int |f''/f'| (c1ac) or sup |log f'| (c1)
  bool has_rotation_prefix = false;
  double rotation_prefix = 0.0;
  std::vector<DiffeoMap> steps;
  std::vector<double> step_distances;
  double residual = 0.0;  // sup-grid distance between the step product and f
};

/// Convex-interpolation fragmentation with N = ceil(M e^{2M} / eps) + 1 and
/// steps measured under the C^{1+AC} metric.
FragmentationPath fragmentation_path_c1ac(const DiffeoMap& f, double epsilon);

/// C1 fragmentation with the Lipschitz-of-log bound: N = ceil(K(1-e^{-M})/eps) + 1,
/// K = e^M, steps measured under sup |log u'|.
FragmentationPath fragmentation_path_c1(const DiffeoMap& f, double epsilon);

/// sup over the family of d(f, identity) -- the numeric surrogate for the
/// coarse-boundedness criteria.
double coarse_bound_score(const std::vector<DiffeoMap>& family, MetricId metric);

/// log f' - log f'(0) sampled on [0,1]; requires a circle stabiliser (f(0)=0).
GridFunction appendix_qi_map(const DiffeoMap& f,
                             std::size_t n_samples = defaults::kSupGrid);

struct BilipschitzResult {
  double sigma = 0.0;
  double d = 0.0;
  bool ok = false;  // sigma <= 2d + 1e-6 and d <= 2 sigma + 1e-6
};

BilipschitzResult bilipschitz_check(const DiffeoMap& f, const DiffeoMap& g);

nlohmann::json path_to_json(const FragmentationPath& p);

}  // namespace circdist
