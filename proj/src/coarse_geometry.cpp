#include "circdist/coarse_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "circdist/errors.hpp"
#include "circdist/quadrature.hpp"

namespace circdist {

NonlinearityVector phi(const DiffeoMap& f, std::size_t n_samples) {
  if (f.smoothness() == Smoothness::C1)
    throw OrderUnsupported("phi requires smoothness >= C1AC");
  NonlinearityVector out;
  out.H = GridFunction::sample([&](double x) { return nonlinearity(f, x); },
                               n_samples, Interp::MonotoneCubic);
  out.mean = out.H.integral();
  return out;
}

DiffeoMap phi_inverse(const NonlinearityVector& H, Domain domain) {
  if (domain == Domain::Circle && std::abs(H.mean) >= 1e-9)
    throw MeanNotZero("phi_inverse: circle realisability needs int H = 0, got mean " +
                      std::to_string(H.mean));
  return DiffeoMap::from_nonlinearity(H.H, domain);
}

// ---------------------------------------------------------------------------
// Fragmentation paths
// ---------------------------------------------------------------------------

namespace {

struct StabilizerSplit {
  DiffeoMap h;
  bool has_rotation = false;
  double theta = 0.0;
};

StabilizerSplit stabilizer_split(const DiffeoMap& f) {
  StabilizerSplit out{f, false, 0.0};
  if (f.domain() != Domain::Circle) return out;
  const double f0 = f.value(0.0);
  const double dist = circle_distance(f0, 0.0);
  if (dist < 1e-15) return out;
  out.has_rotation = true;
  out.theta = f0;
  out.h = compose(DiffeoMap::rotation(-f0), f);
  return out;
}

void check_monotone(const DiffeoMap& f) {
  for (int i = 0; i <= 256; ++i) {
    const double x = static_cast<double>(i) / 256.0;
    if (!(f.derivative(x) > 0.0))
      throw StepBoundViolated("fragmentation: interpolated map is not increasing");
  }
}

double product_residual(const FragmentationPath& path, const DiffeoMap& f) {
  const bool circle = f.domain() == Domain::Circle;
  auto chain = [&](double x) {
    double y = x;
    for (std::size_t i = path.steps.size(); i-- > 0;) y = path.steps[i].value(y);
    if (path.has_rotation_prefix) y += path.rotation_prefix;
    return y;
  };
  auto diff = [&](double x) {
    const double a = chain(x);
    const double b = f.value(x);
    return circle ? circle_distance(a, b) : std::abs(a - b);
  };
  return grid_sup_abs(diff, 0.0, 1.0, 1 << 10, circle);
}

FragmentationPath build_path(const DiffeoMap& f, double epsilon, bool c1ac) {
  if (!(epsilon > 0.0)) throw StepBoundViolated("fragmentation: epsilon must be > 0");
  const StabilizerSplit split = stabilizer_split(f);
  const DiffeoMap& h = split.h;

  FragmentationPath path;
  path.epsilon = epsilon;
  path.has_rotation_prefix = split.has_rotation;
  path.rotation_prefix = split.theta;

  double bound = 0.0;
  if (c1ac) {
    path.M = d_1ac(h, DiffeoMap::identity(h.domain()));
    bound = path.M * std::exp(2.0 * path.M) / epsilon;
  } else {
    auto lg = [&](double x) { return std::log(h.derivative(x)); };
    path.M = grid_sup_abs(lg, 0.0, 1.0, defaults::kSupGrid,
                          h.domain() == Domain::Circle);
    const double lip = std::exp(path.M);  // Lipschitz constant of log on [e^-M, e^M + 1]
    bound = lip * (1.0 - std::exp(-path.M)) / epsilon;
  }
  // The -1e-9 nudge keeps float rounding at integer boundaries from inflating
  // N; the +1 absorbs quadrature slack on the measured side.
  path.N = static_cast<long>(std::ceil(bound - 1e-9)) + 1;

  std::vector<DiffeoMap> stages;
  stages.reserve(path.N + 1);
  for (long i = 0; i <= path.N; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(path.N);
    stages.push_back(DiffeoMap::blend(t, h));
    check_monotone(stages.back());
  }

  for (long i = 1; i <= path.N; ++i) {
    path.steps.push_back(compose(stages[i - 1], invert(stages[i])));
    double dist;
    if (c1ac) {
      // d(u_i, e) = d(f_{i-1}, f_i) by right-invariance of the integral metric.
      dist = d_1ac(stages[i], stages[i - 1]);
    } else {
      auto dl = [&](double x) {
        return std::log(stages[i].derivative(x)) -
               std::log(stages[i - 1].derivative(x));
      };
      dist = grid_sup_abs(dl, 0.0, 1.0, defaults::kSupGrid,
                          h.domain() == Domain::Circle);
    }
    if (dist >= epsilon)
      throw StepBoundViolated("fragmentation: step " + std::to_string(i) +
                              " measured " + std::to_string(dist) +
                              " >= epsilon; quadrature under-resolved");
    path.step_distances.push_back(dist);
  }

  path.residual = product_residual(path, f);
  return path;
}

}  // namespace

FragmentationPath fragmentation_path_c1ac(const DiffeoMap& f, double epsilon) {
  if (f.smoothness() == Smoothness::C1)
    throw OrderUnsupported("fragmentation_path_c1ac requires smoothness >= C1AC");
  return build_path(f, epsilon, /*c1ac=*/true);
}

FragmentationPath fragmentation_path_c1(const DiffeoMap& f, double epsilon) {
  return build_path(f, epsilon, /*c1ac=*/false);
}

double coarse_bound_score(const std::vector<DiffeoMap>& family, MetricId metric) {
  if (family.empty())
    throw BudgetExceeded("coarse_bound_score: family must be nonempty");
  double best = 0.0;
  for (const DiffeoMap& f : family) {
    const DiffeoMap e = DiffeoMap::identity(f.domain());
    best = std::max(best, metric_distance(metric, f, e));
  }
  return best;
}

GridFunction appendix_qi_map(const DiffeoMap& f, std::size_t n_samples) {
  if (f.domain() != Domain::Circle)
    throw NotStabilizer("appendix_qi_map requires a circle map");
  if (circle_distance(f.value(0.0), 0.0) >= 1e-9)
    throw NotStabilizer("appendix_qi_map requires f(0) = 0");
  const double base = std::log(f.derivative(0.0));
  return GridFunction::sample(
      [&](double x) { return std::log(f.derivative(x)) - base; }, n_samples,
      Interp::MonotoneCubic);
}

BilipschitzResult bilipschitz_check(const DiffeoMap& f, const DiffeoMap& g) {
  for (const DiffeoMap* m : {&f, &g}) {
    if (m->domain() != Domain::Circle ||
        circle_distance(m->value(0.0), 0.0) >= 1e-9)
      throw NotStabilizer("bilipschitz_check requires circle stabiliser elements");
  }
  const double f0 = std::log(f.derivative(0.0));
  const double g0 = std::log(g.derivative(0.0));
  auto sdiff = [&](double x) {
    return (std::log(f.derivative(x)) - f0) - (std::log(g.derivative(x)) - g0);
  };
  BilipschitzResult out;
  out.sigma = grid_sup_abs(sdiff, 0.0, 1.0, defaults::kSupGrid, true);
  out.d = d_c1_circle(f, g);
  out.ok = out.sigma <= 2.0 * out.d + 1e-6 && out.d <= 2.0 * out.sigma + 1e-6;
  return out;
}

nlohmann::json path_to_json(const FragmentationPath& p) {
  nlohmann::json hashes = nlohmann::json::array();
  for (const DiffeoMap& s : p.steps) hashes.push_back(s.descriptor_hash());
  nlohmann::json j = {{"schema", "circdist.fragmentation-path.v1"},
                      {"N", p.N},
                      {"epsilon", p.epsilon},
                      {"M", p.M},
                      {"steps", hashes},
                      {"step_distances", p.step_distances},
                      {"residual", p.residual}};
  if (p.has_rotation_prefix) j["rotation_prefix"] = p.rotation_prefix;
  return j;
}

}  // namespace circdist
