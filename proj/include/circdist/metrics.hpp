#pragma once

#include <string>

#include "circdist/diffeo.hpp"

namespace circdist {

/// The explicit pseudometrics/metrics the toolkit evaluates, plus the Polish
/// metric rho and the two classical distortion functionals.
enum class MetricId {
  C1Circle,    // sup |log f' - log g'| on the circle
  C1Interval,  // sup |(log f' - log f'(0)) - (log g' - log g'(0))|
  C1AC,        // int |f''/f' - g''/g'|
  Uniform,     // sup distance between values
  PolishRho,   // sup|f-g| + sup|f'-g'| + int|f''-g''|
  DemeloDist,  // sup_{x,y} (log f'(x) - log f'(y))
  NavasTV,     // total variation of log f' = int |f''/f'|
};

std::string to_string(MetricId id);
MetricId metric_from_string(const std::string& name);

double d_c1_circle(const DiffeoMap& f, const DiffeoMap& g);
double d_c1_interval(const DiffeoMap& f, const DiffeoMap& g);
double d_1ac(const DiffeoMap& f, const DiffeoMap& g);
double uniform_distance(const DiffeoMap& f, const DiffeoMap& g);
double polish_rho(const DiffeoMap& f, const DiffeoMap& g);
double demelo_dist(const DiffeoMap& f);
double navas_tv(const DiffeoMap& f);

/// C1Circle made into a genuine metric by adding the uniform term.
double c1_circle_genuine(const DiffeoMap& f, const DiffeoMap& g);

/// Uniform dispatch. The single-map functionals (DemeloDist, NavasTV) are
/// applied to f o g^{-1}, so metric_distance(id, f, identity) agrees with the
/// direct functional.
double metric_distance(MetricId id, const DiffeoMap& f, const DiffeoMap& g);

}  // namespace circdist
