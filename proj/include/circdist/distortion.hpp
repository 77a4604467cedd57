#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circdist/diffeo.hpp"
#include "circdist/metrics.hpp"

namespace circdist {

struct Rational {
  long p = 0;
  long q = 1;
};

struct RotationNumber {
  double estimate = 0.0;
  std::optional<Rational> rational;  // confirmed by a periodicity residual
};

/// Rotation number of a circle map: (F^n(x0) - x0)/n from x0 = 0, plus a
/// continued-fraction rational candidate confirmed by |f^q(x) - x - p| at a
/// refined near-periodic point. Candidates are admitted at tolerance
/// max(tol, 2/n_iter) since the finite-orbit estimate carries O(1/n) bias for
/// maps with periodic points; the confirmation residual is the real gate.
RotationNumber rotation_number(const DiffeoMap& f,
                               int n_iter = defaults::kRotationIters,
                               double tol = defaults::kRotationTol);

struct PeriodicPoint {
  double x = 0.0;
  long period = 1;
  double multiplier = 1.0;
  bool hyperbolic = false;
};

struct PeriodicScan {
  std::vector<PeriodicPoint> points;
  bool continuum = false;  // essentially every grid point fixed (torsion)
};

/// Period-q points via a sign-change scan of f^q(x) - x - p over a uniform
/// grid (tangential roots are caught by refining near-zero local minima).
/// Duplicates within 1e-9 are merged.
PeriodicScan periodic_points(const DiffeoMap& f, long q,
                             std::size_t grid = defaults::kPeriodicGrid);

enum class Verdict { Distorted, Undistorted };
std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::Distorted;
  std::optional<PeriodicPoint> witness;
  RotationNumber rot;
};

/// Theorem-1 style classification: undistorted iff a hyperbolic periodic
/// point exists. Rational rotation number with q <= q_max is searched for a
/// hyperbolic witness; irrational (no confirmed rational) means distorted;
/// torsion counts as distorted.
Classification classify_c1(const DiffeoMap& f,
                           long q_max = defaults::kRationalQMax);

enum class ReportVerdict { LikelyDistorted, LikelyUndistorted, Inconclusive };
std::string to_string(ReportVerdict v);

struct DistortionReport {
  MetricId metric = MetricId::C1Circle;
  std::vector<long> schedule;
  std::vector<double> distances;
  std::vector<double> ratios;
  std::vector<double> running_inf;
  double limit_estimate = 0.0;
  ReportVerdict verdict = ReportVerdict::Inconclusive;
  double distorted_threshold = defaults::kDistortedThreshold;
  double undistorted_threshold = defaults::kUndistortedThreshold;
  std::string map_hash;
};

/// d(f^n, e) along the doubling schedule {1,2,4,...} up to n_max; ratios,
/// running infimum (Fekete) and an evidence verdict.
DistortionReport asymptotic_distortion(const DiffeoMap& f, MetricId metric,
                                       long n_max = defaults::kNMaxDefault);

/// d(f^n, e). For maps with fixed points and metric c1-circle / c1-interval /
/// c1ac this runs over orbit windows of a fundamental domain per wandering
/// interval, which stays accurate for large n; otherwise the iterate is
/// evaluated directly.
double iterate_distance(const DiffeoMap& f, long n, MetricId metric);

/// Batched d(f^n, e) for several n sharing one orbit pass.
std::vector<double> iterate_distances(const DiffeoMap& f,
                                      const std::vector<long>& ns,
                                      MetricId metric);

/// Orbit sum  sum_{i in Z} int_{f^i(a)}^{f^i(b)} f''/f'  of the C^{1+AC}
/// non-distortion criterion. Checks the sign condition of f'' on every orbit
/// interval and the pairwise disjointness of the orbit intervals.
double lemma_orbit_sum(const DiffeoMap& f, double a, double b,
                       double tail_tol = defaults::kLemmaTailTol);

struct DiscreteWitness {
  long word_length = 0;   // 2n + 1
  double residual = 0.0;  // sup-grid distance between g^n f g^-n and f^{2^n}
  double ratio = 0.0;     // word_length / 2^n
};

/// Conjugation-doubling witness for the standard parabolic/hyperbolic Moebius
/// pair: certifies g^n f g^{-n} = f^{2^n} numerically.
DiscreteWitness discrete_distortion_witness(int n);

nlohmann::json report_to_json(const DistortionReport& r);
std::string report_to_csv(const DistortionReport& r);

}  // namespace circdist
