#pragma once

#include <optional>
#include <vector>

#include "circdist/diffeo.hpp"
#include "circdist/distortion.hpp"

namespace circdist {

/// Rigid rotation x -> x + theta.
DiffeoMap rotation(double theta);

/// Moebius map (a r + b)/(c r + d), ad - bc > 0, transported to the circle.
DiffeoMap mobius_circle(double a, double b, double c, double d);

/// The parabolic/hyperbolic pair carrying r -> r/(r+1) and r -> r/2, with
/// g f g^{-1} = f^2 certified numerically at construction.
struct MobiusPair {
  DiffeoMap f;
  DiffeoMap g;
  double fixed_angle = 0.0;
  double relation_residual = 0.0;
};

MobiusPair prop2_pair();

/// Second derivative of the chart-conjugated map at the parabolic fixed
/// point, computed through the nonlinearity change-of-chart formula. The
/// chart is w = i log z (angle coordinate reversed at the fixed point), the
/// orientation in which the classical computation reports +1.
struct ChartCurvature {
  double psi_chart = 0.0;    // in the log chart
  double angle_chart = 0.0;  // same quantity before the 2 pi rescaling
  double first_derivative = 1.0;
};

ChartCurvature chart_second_derivative(const MobiusPair& pair);

struct Theorem3Certificate {
  double K = 0.0;
  long m = 0;
  double c_m = 0.0;      // normaliser; may underflow to zero for huge m
  double log_c_m = 0.0;  // always meaningful
  double a_m = 0.0;
  double b_m = 0.0;
  double p = 0.0;        // (20 - K)/40
  double f_p = 0.0;
  double sup_fprime = 0.0;
  double int_abs_f2 = 0.0;
  double lower_bound = 0.0;
  bool f_p_gt_1_minus_p = false;
  bool a_m_gt_p = false;
  bool b_m_lt_1_minus_p = false;
  bool int_bound_ok = false;
  bool positive_lower_bound = false;

  bool conditions_ok() const {
    return f_p_gt_1_minus_p && a_m_gt_p && b_m_lt_1_minus_p && int_bound_ok;
  }
  bool all_ok() const { return conditions_ok() && positive_lower_bound; }
};

struct Theorem3Build {
  DiffeoMap map;
  Theorem3Certificate cert;
};

/// Builds the undistorted example f'' = K psi - c_m psi^m. When m is omitted
/// the doubling search picks the smallest power-of-two m satisfying the
/// certificate conditions. Throws BadK outside (0,2] and ConditionFailure
/// when the search cap is reached.
Theorem3Build theorem3_build(double K, std::optional<long> m = std::nullopt,
                             std::size_t n_samples = defaults::kTableSamples);

/// Orbit-sum lower bound on the arc (b_m, f(a_m)); stores the value and the
/// positivity flag into the certificate.
double theorem3_lower_bound(const DiffeoMap& map, Theorem3Certificate& cert,
                            double tail_tol = defaults::kLemmaTailTol);

struct SweepEntry {
  double theta = 0.0;
  double estimate = 0.0;
  std::optional<Rational> rational;
};

struct Plateau {
  Rational value;
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  bool confirmed = false;  // periodic point exists at the plateau value
};

struct SweepTable {
  std::vector<SweepEntry> entries;
  std::vector<Plateau> plateaus;  // >= 3 consecutive equal rationals
};

/// theta -> rot(R_theta o f) over the given grid, with mode-locking plateaus.
SweepTable rotation_sweep(const DiffeoMap& f, const std::vector<double>& thetas);

nlohmann::json certificate_to_json(const Theorem3Certificate& cert);

}  // namespace circdist
