// Test-only oracles, independent of the library evaluation paths they check:
// raw Moebius matrix transport through the tan(pi x) chart, finite
// differences, Romberg quadrature, and seeded random map families.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "circdist/diffeo.hpp"

namespace oracles {

constexpr double kPi = 3.14159265358979323846;

// 2x2 real matrices acting as Moebius maps.
struct Mat2 {
  double a, b, c, d;
};

inline Mat2 mul(const Mat2& m, const Mat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

inline Mat2 inverse(const Mat2& m) { return {m.d, -m.b, -m.c, m.a}; }

// Angle image of x under the matrix action, in [0,1). Works in homogeneous
// coordinates, so the pole of tan at x = 1/2 needs no special case.
inline double mobius_angle(const Mat2& m, double x) {
  const double s = std::sin(kPi * x), c = std::cos(kPi * x);
  const double u = m.a * s + m.b * c;
  const double v = m.c * s + m.d * c;
  double y = std::atan2(u, v) / kPi;
  y -= std::floor(y);
  return y;
}

// Distance between two circle points given as angles/lift values.
inline double circ_dist(double a, double b) {
  const double d = a - b;
  const double f = d - std::floor(d);
  return std::min(f, 1.0 - f);
}

// Central finite differences.
inline double fd1(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double fd2(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Romberg integration on [a,b]; independent of the library's Simpson rules.
inline double romberg(const std::function<double(double)>& f, double a, double b,
                      int levels = 16) {
  std::vector<std::vector<double>> r(levels);
  double h = b - a;
  r[0] = {0.5 * h * (f(a) + f(b))};
  for (int i = 1; i < levels; ++i) {
    h *= 0.5;
    double acc = 0.0;
    const long pts = 1L << (i - 1);
    for (long k = 0; k < pts; ++k)
      acc += f(a + h * static_cast<double>(2 * k + 1));
    r[i].push_back(0.5 * r[i - 1][0] + h * acc);
    for (int j = 1; j <= i; ++j) {
      const double fac = std::pow(4.0, j);
      r[i].push_back((fac * r[i][j - 1] - r[i - 1][j - 1]) / (fac - 1.0));
    }
    if (i > 4 && std::abs(r[i][i] - r[i - 1][i - 1]) < 1e-13) return r[i][i];
  }
  return r[levels - 1][levels - 1];
}

// Dense-grid sup of |f| on [0,1].
inline double dense_sup_abs(const std::function<double(double)>& f, long n) {
  double best = 0.0;
  for (long i = 0; i <= n; ++i)
    best = std::max(best, std::abs(f(static_cast<double>(i) / static_cast<double>(n))));
  return best;
}

// Random circle map families. Trigonometric-polynomial nonlinearities have
// exact zero mean, so they are circle realisable.
inline circdist::DiffeoMap random_circle_map(std::mt19937& rng, double scale,
                                             std::size_t samples = 1 << 13) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a1 = u(rng) * scale, b1 = u(rng) * scale;
  const double a2 = u(rng) * scale * 0.5, b2 = u(rng) * scale * 0.5;
  auto H = [=](double x) {
    return a1 * std::sin(2 * kPi * x) + b1 * std::cos(2 * kPi * x) +
           a2 * std::sin(4 * kPi * x) + b2 * std::cos(4 * kPi * x);
  };
  return circdist::DiffeoMap::from_nonlinearity_fn(H, samples,
                                                   circdist::Domain::Circle);
}

inline circdist::DiffeoMap random_interval_map(std::mt19937& rng, double scale,
                                               std::size_t samples = 1 << 13) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c0 = u(rng) * scale;
  const double a1 = u(rng) * scale, b1 = u(rng) * scale;
  auto H = [=](double x) {
    return c0 + a1 * std::sin(2 * kPi * x) + b1 * std::cos(2 * kPi * x);
  };
  return circdist::DiffeoMap::from_nonlinearity_fn(H, samples,
                                                   circdist::Domain::Interval);
}

// Circle stabiliser with a hyperbolic fixed point at 0: resamples until the
// multiplier 1/C is bounded away from 1.
inline circdist::DiffeoMap planted_hyperbolic_map(std::mt19937& rng, double scale) {
  for (int tries = 0; tries < 64; ++tries) {
    circdist::DiffeoMap f = random_circle_map(rng, scale);
    if (std::abs(std::log(f.derivative(0.0))) > 0.05) return f;
  }
  throw std::runtime_error("planted_hyperbolic_map: sampling failed");
}

}  // namespace oracles
