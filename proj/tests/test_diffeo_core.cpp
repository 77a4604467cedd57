#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "circdist/diffeo.hpp"
#include "circdist/errors.hpp"
#include "oracles.hpp"

using namespace circdist;
using oracles::Mat2;
namespace {
constexpr double kPi = 3.14159265358979323846;

DiffeoMap prop2_f() { return DiffeoMap::mobius(1, 0, 1, 1); }  // r -> r/(r+1)
DiffeoMap hyper_g() { return DiffeoMap::mobius(1, 0, 0, 2); }  // r -> r/2
}  // namespace

TEST_CASE("rotation evaluators") {
  DiffeoMap r = DiffeoMap::rotation(0.25);
  CHECK(r.value(0.3) == doctest::Approx(0.55).epsilon(1e-15));
  CHECK(r.derivative(0.123) == 1.0);
  CHECK(r.second_derivative(0.9) == 0.0);
}

TEST_CASE("parabolic fixed angle has unit derivative") {
  DiffeoMap f = prop2_f();
  CHECK(f.derivative(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Cross-check against central differences of the lift.
  auto lift = [&](double x) { return f.value(x); };
  CHECK(std::abs(oracles::fd1(lift, 0.0, 1e-6) - 1.0) < 1e-5);
}

TEST_CASE("lift equivariance F(x+1) = F(x) + 1") {
  std::vector<DiffeoMap> maps = {DiffeoMap::rotation(0.37), prop2_f(), hyper_g(),
                                 DiffeoMap::theorem3(1.5, 64, 1 << 12)};
  std::mt19937 rng(7);
  maps.push_back(oracles::random_circle_map(rng, 0.6));
  for (const DiffeoMap& f : maps) {
    for (int i = 0; i < (1 << 10); ++i) {
      const double x = -1.5 + 3.0 * i / static_cast<double>(1 << 10);
      CHECK(std::abs(f.value(x + 1.0) - f.value(x) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("compose: identity, rotations, and Cayley transport oracle") {
  DiffeoMap f = prop2_f();
  DiffeoMap id = DiffeoMap::identity(Domain::Circle);
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    CHECK(compose(f, id).value(x) == doctest::Approx(f.value(x)).epsilon(1e-15));
    CHECK(compose(id, f).value(x) == doctest::Approx(f.value(x)).epsilon(1e-15));
  }
  DiffeoMap rab = compose(DiffeoMap::rotation(0.3), DiffeoMap::rotation(0.45));
  DiffeoMap rsum = DiffeoMap::rotation(0.75);
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    CHECK(std::abs(rab.value(x) - rsum.value(x)) < 1e-15);
  }
  // G o F against the matrix product pushed through the chart.
  Mat2 F{1, 0, 1, 1}, G{1, 0, 0, 2};
  DiffeoMap gf = compose(hyper_g(), f);
  const Mat2 GF = oracles::mul(G, F);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = i / 1000.0;
    worst = std::max(worst, oracles::circ_dist(gf.value(x),
                                               oracles::mobius_angle(GF, x)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("compose requires matching domains") {
  CHECK_THROWS_AS(compose(DiffeoMap::identity(Domain::Circle),
                          DiffeoMap::identity(Domain::Interval)),
                  DomainMismatch);
}

TEST_CASE("invert: rotations, identity, and Moebius inverse oracle") {
  DiffeoMap r = invert(DiffeoMap::rotation(0.3));
  DiffeoMap want = DiffeoMap::rotation(-0.3);
  for (int i = 0; i <= 64; ++i) {
    const double x = i / 64.0;
    CHECK(std::abs(r.value(x) - want.value(x)) < 1e-12);
  }
  DiffeoMap id = invert(DiffeoMap::identity(Domain::Circle));
  CHECK(id.value(0.77) == doctest::Approx(0.77).epsilon(1e-15));

  DiffeoMap gi = invert(hyper_g());
  const Mat2 Ginv = oracles::inverse(Mat2{1, 0, 0, 2});  // induced by r -> 2r
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = i / 1000.0;
    worst = std::max(worst, oracles::circ_dist(gi.value(x),
                                               oracles::mobius_angle(Ginv, x)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("invert is a pointwise inverse within root-find tolerance") {
  std::mt19937 rng(11);
  std::vector<DiffeoMap> maps = {hyper_g(), prop2_f(),
                                 oracles::random_circle_map(rng, 0.7),
                                 oracles::random_interval_map(rng, 0.7)};
  for (const DiffeoMap& f : maps) {
    DiffeoMap g = invert(f);
    for (int i = 0; i <= (1 << 8); ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(1 << 8);
      CHECK(std::abs(g.value(f.value(x)) - x) < 1e-11);
    }
    // derivative of the inverse = 1 / (f' o f^-1)
    const double x = 0.37;
    CHECK(g.derivative(f.value(x)) ==
          doctest::Approx(1.0 / f.derivative(x)).epsilon(1e-9));
  }
}

TEST_CASE("iterate: torsion, identity, and parabolic closed form") {
  DiffeoMap id3 = iterate(DiffeoMap::rotation(1.0 / 3.0), 3);
  for (int i = 0; i <= 128; ++i) {
    const double x = i / 128.0;
    CHECK(oracles::circ_dist(id3.value(x), x) < 1e-15);
  }
  CHECK(iterate(prop2_f(), 0).value(0.4) == 0.4);

  // f^n through the chart: r -> r/(n r + 1).
  DiffeoMap f = prop2_f();
  for (long n : {2L, 7L, 64L}) {
    DiffeoMap fn = iterate(f, n);
    const Mat2 Fn{1, 0, static_cast<double>(n), 1};
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = i / 1000.0;
      worst = std::max(worst, oracles::circ_dist(fn.value(x),
                                                 oracles::mobius_angle(Fn, x)));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("group laws on a sample grid") {
  std::mt19937 rng(5);
  std::vector<DiffeoMap> maps = {hyper_g(), prop2_f(),
                                 oracles::random_circle_map(rng, 0.5)};
  for (const DiffeoMap& f : maps) {
    DiffeoMap fi = compose(f, invert(f));
    double worst = 0.0;
    for (int i = 0; i < (1 << 12); ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(1 << 12);
      worst = std::max(worst, oracles::circ_dist(fi.value(x), x));
    }
    CHECK(worst < 1e-10);
  }
  // associativity
  DiffeoMap a = hyper_g(), b = prop2_f(), c = DiffeoMap::rotation(0.21);
  DiffeoMap lhs = compose(compose(a, b), c);
  DiffeoMap rhs = compose(a, compose(b, c));
  for (int i = 0; i < 512; ++i) {
    const double x = i / 512.0;
    CHECK(std::abs(lhs.value(x) - rhs.value(x)) < 1e-10);
  }
}

TEST_CASE("chain rule for derivatives of compositions") {
  DiffeoMap f = hyper_g(), g = prop2_f();
  DiffeoMap fg = compose(f, g);
  for (int i = 0; i < 257; ++i) {
    const double x = i / 257.0;
    const double want = f.derivative(g.value(x)) * g.derivative(x);
    CHECK(std::abs(fg.derivative(x) - want) < 1e-10);
  }
}

TEST_CASE("log_deriv_iterate: rotations, additivity, hyperbolic multiplier") {
  CHECK(log_deriv_iterate(DiffeoMap::rotation(0.3), 17, 0.4) == 0.0);
  DiffeoMap f = prop2_f();
  for (auto [m, n] : {std::pair<long, long>{3, 5}, {8, 8}, {1, 20}}) {
    const double x = 0.27;
    const double lhs = log_deriv_iterate(f, m + n, x);
    const double rhs = log_deriv_iterate(f, m, iterate(f, n).value(x)) +
                       log_deriv_iterate(f, n, x);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
  // Multiplier of r -> r/2 at the fixed angle 0 is 1/2.
  for (long n : {1L, 5L, 12L}) {
    CHECK(log_deriv_iterate(hyper_g(), n, 0.0) ==
          doctest::Approx(-static_cast<double>(n) * std::log(2.0)).epsilon(1e-12));
  }
  // agrees with the power-node derivative
  DiffeoMap f32 = iterate(f, 32);
  const double x = 0.61;
  CHECK(std::abs(std::log(f32.derivative(x)) - log_deriv_iterate(f, 32, x)) < 1e-9);
}

TEST_CASE("nonlinearity_iterate: rotations, cocycle, flat fixed point") {
  CHECK(nonlinearity_iterate(DiffeoMap::rotation(0.4), 9, 0.1) == 0.0);
  DiffeoMap f = prop2_f();
  const double x = 0.33;
  const double unrolled = nonlinearity(f, f.value(x)) * f.derivative(x) +
                          nonlinearity(f, x);
  CHECK(std::abs(nonlinearity_iterate(f, 2, x) - unrolled) < 1e-12);
  // Theorem-3 construction has f''(0) = 0.
  DiffeoMap t3 = DiffeoMap::theorem3(2.0, 128, 1 << 12);
  CHECK(std::abs(nonlinearity_iterate(t3, 1, 0.0)) < 1e-12);
}

TEST_CASE("nonlinearity cocycle identity for compositions") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_real_distribution<double> u(0.2, 2.0);
    DiffeoMap f = DiffeoMap::mobius(u(rng), 0, 0, u(rng));
    DiffeoMap g = DiffeoMap::mobius(1, 0, u(rng), 1);
    DiffeoMap fg = compose(f, g);
    for (int i = 0; i < 64; ++i) {
      const double x = i / 64.0;
      const double want =
          nonlinearity(f, g.value(x)) * g.derivative(x) + nonlinearity(g, x);
      CHECK(std::abs(nonlinearity(fg, x) - want) < 1e-9);
    }
  }
}

TEST_CASE("order-1 evaluators match finite differences of order 0") {
  std::mt19937 rng(3);
  std::vector<DiffeoMap> maps = {DiffeoMap::rotation(0.4), hyper_g(), prop2_f(),
                                 DiffeoMap::theorem3(2.0, 128, 1 << 14),
                                 oracles::random_circle_map(rng, 0.5)};
  for (const DiffeoMap& f : maps) {
    for (int i = 0; i < 101; ++i) {
      const double x = i / 101.0;
      auto lift = [&](double t) { return f.value(t); };
      CHECK(std::abs(f.derivative(x) - oracles::fd1(lift, x, 1e-6)) < 1e-5);
    }
  }
}

TEST_CASE("order capability guard") {
  DiffeoMap f = hyper_g().with_smoothness(Smoothness::C1);
  CHECK_THROWS_AS(f.evaluate(0.2, 2), OrderUnsupported);
  CHECK(f.evaluate(0.2, 1) > 0.0);
  // smoothness propagates through composition as the minimum
  DiffeoMap fg = compose(f, hyper_g());
  CHECK(fg.smoothness() == Smoothness::C1);
  CHECK_THROWS_AS(nonlinearity_iterate(fg, 2, 0.1), OrderUnsupported);
}

TEST_CASE("negative iterates evaluate through the inverse orbit") {
  DiffeoMap g = hyper_g();
  DiffeoMap gm2 = iterate(g, -2);
  DiffeoMap g2 = iterate(g, 2);
  for (int i = 0; i <= 64; ++i) {
    const double x = i / 64.0;
    CHECK(std::abs(gm2.value(g2.value(x)) - x) < 1e-10);
  }
  CHECK(std::abs(std::log(gm2.derivative(0.0)) - 2.0 * std::log(2.0)) < 1e-10);
}

TEST_CASE("descriptor JSON round-trips exactly") {
  std::mt19937 rng(99);
  std::vector<DiffeoMap> maps = {
      DiffeoMap::rotation(0.1234567890123),
      DiffeoMap::mobius(1.5, -0.25, 0.125, 2.0),
      compose(DiffeoMap::rotation(0.3), hyper_g()),
      iterate(prop2_f(), -3),
      DiffeoMap::blend(0.25, hyper_g()),
      invert(oracles::random_circle_map(rng, 0.4, 1 << 6)),
      DiffeoMap::theorem3(2.0, 16, 1 << 8),
      hyper_g().with_smoothness(Smoothness::C1AC),
  };
  for (const DiffeoMap& f : maps) {
    const std::string dumped = f.descriptor().dump();
    DiffeoMap back = DiffeoMap::parse(f.descriptor());
    CHECK(back.descriptor().dump() == dumped);
    CHECK(back.descriptor_hash() == f.descriptor_hash());
    CHECK(back.domain() == f.domain());
    CHECK(back.smoothness() == f.smoothness());
    // and the rebuilt map evaluates identically
    for (int i = 0; i < 16; ++i) {
      const double x = i / 16.0;
      CHECK(back.value(x) == doctest::Approx(f.value(x)).epsilon(1e-14));
    }
  }
}

TEST_CASE("descriptor parse rejects malformed input") {
  CHECK_THROWS_AS(DiffeoMap::parse(std::string("{\"nope\":1}")), ParseError);
  CHECK_THROWS_AS(DiffeoMap::parse(std::string("not json")), ParseError);
  CHECK_THROWS_AS(
      DiffeoMap::parse(std::string(
          "{\"domain\":\"interval\",\"node\":{\"type\":\"rotation\",\"theta\":0.5}}")),
      ParseError);
}

TEST_CASE("mobius requires positive determinant") {
  CHECK_THROWS_AS(DiffeoMap::mobius(1, 0, 0, -1), DegenerateMatrix);
  CHECK_THROWS_AS(DiffeoMap::mobius(1, 2, 1, 2), DegenerateMatrix);
}

TEST_CASE("from_nonlinearity circle realisability") {
  auto bad = GridFunction::sample([](double) { return 0.3; }, 1 << 8,
                                  Interp::MonotoneCubic);
  CHECK_THROWS_AS(DiffeoMap::from_nonlinearity(bad, Domain::Circle), MeanNotZero);
  CHECK_NOTHROW(DiffeoMap::from_nonlinearity(bad, Domain::Interval));
}
