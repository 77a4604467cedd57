#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "circdist/grid_function.hpp"
#include "circdist/quadrature.hpp"
#include "oracles.hpp"

using namespace circdist;
namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("evaluation at grid nodes returns stored values exactly") {
  auto g = GridFunction::sample([](double x) { return std::sin(7.0 * x) + x; },
                                1 << 10, Interp::MonotoneCubic);
  const std::size_t n = g.n_samples();
  for (std::size_t i = 0; i <= n; i += 7) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    CHECK(g(x) == g.values()[i]);
  }
}

TEST_CASE("sample count must be a power of two") {
  std::vector<double> v(1000, 0.0);
  CHECK_THROWS(GridFunction(v, Interp::Linear));
}

TEST_CASE("antiderivative matches closed form and is self-consistent") {
  auto integrand = [](double x) { return std::cos(2.0 * kPi * x); };
  auto a = GridFunction::antiderivative(integrand, 1 << 12);
  for (double x : {0.1, 0.25, 0.3331, 0.5, 0.77, 1.0}) {
    const double want = std::sin(2.0 * kPi * x) / (2.0 * kPi);
    CHECK(std::abs(a(x) - want) < 1e-12);
  }
  // Self-consistency: table endpoint equals direct Simpson of the integrand.
  const double direct = composite_simpson(integrand, 0.0, 1.0, 1 << 12);
  CHECK(std::abs(a(1.0) - direct) < 1e-12);
}

TEST_CASE("monotone cubic preserves monotone data") {
  auto g = GridFunction::sample([](double x) { return x + 0.2 * std::sin(kPi * x); },
                                1 << 8, Interp::MonotoneCubic);
  double prev = g(0.0);
  for (int i = 1; i <= 4096; ++i) {
    const double x = i / 4096.0;
    const double v = g(x);
    CHECK(v >= prev - 1e-14);
    prev = v;
  }
}

TEST_CASE("interpolation error for smooth data") {
  auto fn = [](double x) { return std::exp(std::sin(2.0 * kPi * x)); };
  auto g = GridFunction::sample(fn, 1 << 12, Interp::MonotoneCubic);
  double worst = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = i / 10000.0;
    worst = std::max(worst, std::abs(g(x) - fn(x)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("derivative of interpolant tracks the true derivative") {
  auto fn = [](double x) { return std::sin(2.0 * kPi * x); };
  auto g = GridFunction::sample(fn, 1 << 12, Interp::MonotoneCubic);
  double worst = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double x = i / 1000.0;
    worst = std::max(worst,
                     std::abs(g.derivative(x) - 2.0 * kPi * std::cos(2.0 * kPi * x)));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("integral and integral_abs") {
  auto g = GridFunction::sample([](double x) { return std::sin(2.0 * kPi * x); },
                                1 << 12, Interp::MonotoneCubic);
  CHECK(std::abs(g.integral()) < 1e-12);
  CHECK(std::abs(g.integral_abs() - 2.0 / kPi) < 1e-6);
}

TEST_CASE("linear interpolation stays within data hull") {
  auto g = GridFunction::sample([](double x) { return x * x; }, 1 << 6,
                                Interp::Linear);
  CHECK(g(0.5) == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(g.derivative(0.5 + 1e-4) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("quadrature helpers agree with Romberg oracle") {
  auto fn = [](double x) { return 1.0 / (1.0 + x * x); };
  const double want = oracles::romberg(fn, 0.0, 1.0);
  CHECK(std::abs(composite_simpson(fn, 0.0, 1.0, 1 << 10) - want) < 1e-12);
  CHECK(std::abs(adaptive_simpson(fn, 0.0, 1.0, 1e-12) - want) < 1e-10);
  bool conv = false;
  CHECK(std::abs(simpson_refined(fn, 0.0, 1.0, 1 << 10, 1e-6, &conv) - want) < 1e-12);
  CHECK(conv);
}

TEST_CASE("grid_sup_abs finds off-grid maxima") {
  // Peak deliberately between grid points.
  auto fn = [](double x) { return std::exp(-1e4 * (x - 0.31234567) * (x - 0.31234567)); };
  CHECK(grid_sup_abs(fn, 0.0, 1.0, 1 << 10, false) == doctest::Approx(1.0).epsilon(1e-9));
}
