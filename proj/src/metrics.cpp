#include "circdist/metrics.hpp"

#include <cmath>

#include "circdist/errors.hpp"
#include "circdist/quadrature.hpp"

namespace circdist {

std::string to_string(MetricId id) {
  switch (id) {
    case MetricId::C1Circle: return "c1-circle";
    case MetricId::C1Interval: return "c1-interval";
    case MetricId::C1AC: return "c1ac";
    case MetricId::Uniform: return "uniform";
    case MetricId::PolishRho: return "polish-rho";
    case MetricId::DemeloDist: return "demelo-dist";
    case MetricId::NavasTV: return "navas-tv";
  }
  return "c1-circle";
}

MetricId metric_from_string(const std::string& name) {
  if (name == "c1-circle") return MetricId::C1Circle;
  if (name == "c1-interval") return MetricId::C1Interval;
  if (name == "c1ac") return MetricId::C1AC;
  if (name == "uniform") return MetricId::Uniform;
  if (name == "polish-rho") return MetricId::PolishRho;
  if (name == "demelo-dist") return MetricId::DemeloDist;
  if (name == "navas-tv") return MetricId::NavasTV;
  throw ParseError("unknown metric: " + name);
}

namespace {

void require_same_domain(const DiffeoMap& f, const DiffeoMap& g) {
  if (f.domain() != g.domain())
    throw DomainMismatch("metric arguments live on different domains");
}

void require_c1ac(const DiffeoMap& f) {
  if (f.smoothness() == Smoothness::C1)
    throw OrderUnsupported("metric requires smoothness >= C1AC");
}

}  // namespace

double d_c1_circle(const DiffeoMap& f, const DiffeoMap& g) {
  require_same_domain(f, g);
  if (f.domain() != Domain::Circle)
    throw DomainMismatch("c1-circle metric requires circle maps");
  auto h = [&](double x) { return std::log(f.derivative(x)) - std::log(g.derivative(x)); };
  return grid_sup_abs(h, 0.0, 1.0, defaults::kSupGrid, /*periodic=*/true);
}

double d_c1_interval(const DiffeoMap& f, const DiffeoMap& g) {
  require_same_domain(f, g);
  if (f.domain() != Domain::Interval)
    throw DomainMismatch("c1-interval metric requires interval maps");
  const double f0 = std::log(f.derivative(0.0));
  const double g0 = std::log(g.derivative(0.0));
  auto h = [&](double x) {
    return (std::log(f.derivative(x)) - f0) - (std::log(g.derivative(x)) - g0);
  };
  return grid_sup_abs(h, 0.0, 1.0, defaults::kSupGrid, /*periodic=*/false);
}

double d_1ac(const DiffeoMap& f, const DiffeoMap& g) {
  require_same_domain(f, g);
  require_c1ac(f);
  require_c1ac(g);
  auto h = [&](double x) { return std::abs(nonlinearity(f, x) - nonlinearity(g, x)); };
  return simpson_refined(h, 0.0, 1.0, defaults::kQuadIntervals);
}

double uniform_distance(const DiffeoMap& f, const DiffeoMap& g) {
  require_same_domain(f, g);
  if (f.domain() == Domain::Circle) {
    auto h = [&](double x) { return circle_distance(f.value(x), g.value(x)); };
    return grid_sup_abs(h, 0.0, 1.0, defaults::kSupGrid, true);
  }
  auto h = [&](double x) { return f.value(x) - g.value(x); };
  return grid_sup_abs(h, 0.0, 1.0, defaults::kSupGrid, false);
}

double polish_rho(const DiffeoMap& f, const DiffeoMap& g) {
  require_same_domain(f, g);
  require_c1ac(f);
  require_c1ac(g);
  const bool circle = f.domain() == Domain::Circle;
  auto dp = [&](double x) { return f.derivative(x) - g.derivative(x); };
  auto dpp = [&](double x) {
    return std::abs(f.second_derivative(x) - g.second_derivative(x));
  };
  return uniform_distance(f, g) +
         grid_sup_abs(dp, 0.0, 1.0, defaults::kSupGrid, circle) +
         simpson_refined(dpp, 0.0, 1.0, defaults::kQuadIntervals);
}

double demelo_dist(const DiffeoMap& f) {
  auto lg = [&](double x) { return std::log(f.derivative(x)); };
  auto neg = [&](double x) { return -std::log(f.derivative(x)); };
  const bool circle = f.domain() == Domain::Circle;
  return grid_max(lg, 0.0, 1.0, defaults::kSupGrid, circle) +
         grid_max(neg, 0.0, 1.0, defaults::kSupGrid, circle);
}

double navas_tv(const DiffeoMap& f) {
  return d_1ac(f, DiffeoMap::identity(f.domain()));
}

double c1_circle_genuine(const DiffeoMap& f, const DiffeoMap& g) {
  return d_c1_circle(f, g) + uniform_distance(f, g);
}

double metric_distance(MetricId id, const DiffeoMap& f, const DiffeoMap& g) {
  switch (id) {
    case MetricId::C1Circle: return d_c1_circle(f, g);
    case MetricId::C1Interval: return d_c1_interval(f, g);
    case MetricId::C1AC: return d_1ac(f, g);
    case MetricId::Uniform: return uniform_distance(f, g);
    case MetricId::PolishRho: return polish_rho(f, g);
    case MetricId::DemeloDist:
    case MetricId::NavasTV: {
      require_same_domain(f, g);
      const bool g_is_identity = g.descriptor() ==
                                 DiffeoMap::identity(g.domain()).descriptor();
      const DiffeoMap h = g_is_identity ? f : compose(f, invert(g));
      return id == MetricId::DemeloDist ? demelo_dist(h) : navas_tv(h);
    }
  }
  throw ParseError("metric_distance: unhandled metric id");
}

}  // namespace circdist
