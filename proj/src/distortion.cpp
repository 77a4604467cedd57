#include "circdist/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "circdist/constructions.hpp"
#include "circdist/errors.hpp"
#include "circdist/quadrature.hpp"
#include "circdist/root_finding.hpp"

namespace circdist {

std::string to_string(Verdict v) {
  return v == Verdict::Undistorted ? "Undistorted" : "Distorted";
}

std::string to_string(ReportVerdict v) {
  switch (v) {
    case ReportVerdict::LikelyDistorted: return "LikelyDistorted";
    case ReportVerdict::LikelyUndistorted: return "LikelyUndistorted";
    case ReportVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

// ---------------------------------------------------------------------------
// Rotation number
// ---------------------------------------------------------------------------

namespace {

std::vector<Rational> cf_convergents(double x, long q_max) {
  std::vector<Rational> out;
  long h_prev = 1, h_prev2 = 0;  // numerators
  long k_prev = 0, k_prev2 = 1;  // denominators
  double xi = x;
  for (int it = 0; it < 40; ++it) {
    const double fl = std::floor(xi);
    if (fl > 1e17 || fl < -1e17) break;
    const long a = static_cast<long>(fl);
    const long h = a * h_prev + h_prev2;
    const long k = a * k_prev + k_prev2;
    if (k > q_max) break;
    out.push_back({h, k});
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const double frac_part = xi - fl;
    if (frac_part < 1e-15) break;
    xi = 1.0 / frac_part;
  }
  return out;
}

// Smallest |f^q(x) - x - p| over a grid with a golden-section refinement.
double periodicity_residual(const DiffeoMap& f, long p, long q) {
  auto w = [&](double x) {
    double y = x;
    for (long k = 0; k < q; ++k) y = f.value(y);
    return y - x - static_cast<double>(p);
  };
  auto neg_abs = [&](double x) { return -std::abs(w(x)); };
  return -grid_max(neg_abs, 0.0, 1.0, 256, /*periodic=*/true);
}

}  // namespace

RotationNumber rotation_number(const DiffeoMap& f, int n_iter, double tol) {
  if (f.domain() != Domain::Circle)
    throw DomainMismatch("rotation_number requires a circle map");
  double y = 0.0;
  for (int k = 0; k < n_iter; ++k) y = f.value(y);
  RotationNumber out;
  out.estimate = y / static_cast<double>(n_iter);
  // The finite-orbit estimate has O(1/n) bias when f has periodic points, so
  // candidates are admitted loosely; the periodicity residual decides.
  const double admit = std::max(tol, 2.0 / static_cast<double>(n_iter));
  for (const Rational& r : cf_convergents(out.estimate, defaults::kRationalQMax)) {
    const double target = static_cast<double>(r.p) / static_cast<double>(r.q);
    if (std::abs(out.estimate - target) > admit) continue;
    if (periodicity_residual(f, r.p, r.q) < defaults::kPeriodicResidualTol) {
      out.rational = r;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Periodic points
// ---------------------------------------------------------------------------

namespace {

double golden_min_abs(const std::function<double(double)>& f, double lo, double hi,
                      double* arg_out) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = std::abs(f(c));
  double fd = std::abs(f(d));
  for (int it = 0; it < 90 && (b - a) > 1e-14; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = std::abs(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = std::abs(f(d));
    }
  }
  if (arg_out) *arg_out = fc < fd ? c : d;
  return std::min(fc, fd);
}

}  // namespace

PeriodicScan periodic_points(const DiffeoMap& f, long q, std::size_t grid) {
  auto fq = [&](double x) {
    double y = x;
    for (long k = 0; k < q; ++k) y = f.value(y);
    return y;
  };
  const bool circle = f.domain() == Domain::Circle;
  const std::size_t n = grid;
  std::vector<double> w(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    w[i] = fq(x) - x;
  }
  double wmin = w[0], wmax = w[0];
  for (double v : w) {
    wmin = std::min(wmin, v);
    wmax = std::max(wmax, v);
  }

  PeriodicScan scan;
  std::vector<double> roots;
  const long k_lo = static_cast<long>(std::floor(wmin - 1e-12));
  const long k_hi = static_cast<long>(std::ceil(wmax + 1e-12));
  for (long k = k_lo; k <= k_hi; ++k) {
    if (!circle && k != 0) continue;
    const double kd = static_cast<double>(k);
    std::size_t near_zero = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(w[i] - kd) < 1e-10) ++near_zero;
    if (near_zero > n / 2) {
      scan.continuum = true;
      return scan;
    }
    auto g = [&](double x) { return fq(x) - x - kd; };
    const std::size_t last_cell = circle ? n : n;  // w[n] duplicates w[0]+0 on circle
    for (std::size_t i = 0; i < last_cell; ++i) {
      const double x0 = static_cast<double>(i) / static_cast<double>(n);
      const double x1 = static_cast<double>(i + 1) / static_cast<double>(n);
      const double a = w[i] - kd;
      const double b = w[i + 1] - kd;
      if (std::abs(a) < 1e-10) {
        roots.push_back(x0);
        continue;
      }
      if (!circle && i + 1 == n && std::abs(b) < 1e-10) roots.push_back(x1);
      if (a * b < 0.0) {
        double lo = x0, hi = x1;
        double ga = a;
        while (hi - lo > 1e-12) {
          const double mid = 0.5 * (lo + hi);
          const double gm = g(mid);
          if (gm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((gm < 0.0) == (ga < 0.0)) {
            lo = mid;
            ga = gm;
          } else {
            hi = mid;
          }
        }
        roots.push_back(0.5 * (lo + hi));
      } else if (std::min(std::abs(a), std::abs(b)) < 1e-5) {
        // Possible tangential root inside the cell.
        double arg = 0.0;
        const double lo = circle ? x0 - 0.5 / static_cast<double>(n)
                                 : std::max(0.0, x0 - 0.5 / static_cast<double>(n));
        const double hi = circle ? x1 + 0.5 / static_cast<double>(n)
                                 : std::min(1.0, x1 + 0.5 / static_cast<double>(n));
        if (golden_min_abs(g, lo, hi, &arg) < 1e-10) roots.push_back(arg);
      }
    }
  }

  // Normalise into [0,1) for the circle and merge duplicates.
  for (double& r : roots)
    if (circle) r -= std::floor(r);
  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (!merged.empty() && r - merged.back() < 1e-9) continue;
    merged.push_back(r);
  }
  if (circle && merged.size() > 1 && (1.0 - merged.back()) + merged.front() < 1e-9)
    merged.pop_back();

  for (double r : merged) {
    PeriodicPoint pt;
    pt.x = r;
    pt.period = q;
    pt.multiplier = std::exp(log_deriv_iterate(f, q, r));
    pt.hyperbolic = std::abs(std::log(pt.multiplier)) > defaults::kTolHyp;
    scan.points.push_back(pt);
  }
  return scan;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

Classification classify_c1(const DiffeoMap& f, long q_max) {
  Classification out;
  long q = 1;
  if (f.domain() == Domain::Circle) {
    out.rot = rotation_number(f);
    if (!out.rot.rational) {
      out.verdict = Verdict::Distorted;  // irrational rotation number
      return out;
    }
    q = out.rot.rational->q;
    if (q > q_max)
      throw BudgetExceeded("classify_c1: rotation number has period " +
                           std::to_string(q) + " > q_max");
  } else {
    out.rot.estimate = 0.0;
    out.rot.rational = Rational{0, 1};
  }
  const PeriodicScan scan = periodic_points(f, q);
  if (scan.continuum) {
    out.verdict = Verdict::Distorted;  // torsion counts as distorted
    return out;
  }
  const PeriodicPoint* best = nullptr;
  for (const PeriodicPoint& pt : scan.points) {
    if (!pt.hyperbolic) continue;
    if (!best || std::abs(std::log(pt.multiplier)) > std::abs(std::log(best->multiplier)))
      best = &pt;
  }
  if (best) {
    out.verdict = Verdict::Undistorted;
    out.witness = *best;
  } else {
    out.verdict = Verdict::Distorted;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Iterate distances via fundamental-domain orbit windows
// ---------------------------------------------------------------------------

namespace {

struct FixedStructure {
  std::vector<double> points;  // sorted; circle: in [0,1), interval: in [0,1]
  long k_offset = 0;           // F(p) - p at fixed points
  bool continuum = false;
  bool none = false;
};

FixedStructure fixed_structure(const DiffeoMap& f) {
  FixedStructure out;
  const PeriodicScan scan = periodic_points(f, 1);
  out.continuum = scan.continuum;
  if (scan.continuum) return out;
  if (scan.points.empty()) {
    out.none = true;
    return out;
  }
  for (const PeriodicPoint& pt : scan.points) out.points.push_back(pt.x);
  std::sort(out.points.begin(), out.points.end());
  out.k_offset = std::lround(f.value(out.points.front()) - out.points.front());
  return out;
}

// Accumulates d(f^n, e) contributions from one wandering interval (alpha,
// beta) of the shifted lift G = F - k. Window sums over a tiled fundamental
// domain give log (f^n)' and (f^n)''/(f^n)' on every tile from one forward
// orbit per quadrature node, seeded in the deepest backward tile.
class WindowAccumulator {
 public:
  WindowAccumulator(const DiffeoMap& f, long k_offset, double alpha, double beta,
                    bool integral, double step_offset, long cap_back, long cap_fwd,
                    std::size_t n_cells)
      : f_(f), k_(static_cast<double>(k_offset)), integral_(integral),
        offset_(step_offset) {
    const double w = 0.5 * (alpha + beta);
    const bool ascending = gval(w) > w;

    // Backward anchor chain of w toward the repelling end.
    std::vector<double> chain;
    chain.push_back(w);
    double prev_logd = std::log(f_.derivative(w));
    for (long j = 0; j < cap_back; ++j) {
      const double cur = chain.back();
      double lo = ascending ? alpha : cur;
      double hi = ascending ? cur : beta;
      auto g = [&](double z) { return gval(z) - cur; };
      auto dg = [&](double z) { return f_.derivative(z); };
      double prev = chain.back();
      double next;
      try {
        next = solve_increasing(g, dg, lo, hi);
      } catch (const ConvergenceFailure&) {
        break;
      }
      if (std::abs(next - prev) < 1e-16) break;
      chain.push_back(next);
      const double logd = std::log(f_.derivative(next));
      if (j >= 8 && std::abs(logd - prev_logd) < 1e-13) break;
      prev_logd = logd;
    }
    const std::size_t jb = chain.size() - 1;

    // Forward anchors just to size the total tile count.
    long jf = 0;
    {
      double u = w;
      double pl = std::log(f_.derivative(u));
      for (long j = 0; j < cap_fwd; ++j) {
        const double nu = gval(u);
        if (std::abs(nu - u) < 1e-16) break;
        u = nu;
        const double l = std::log(f_.derivative(u));
        ++jf;
        if (j >= 8 && std::abs(l - pl) < 1e-13) break;
        pl = l;
      }
    }
    j_total_ = static_cast<long>(jb) + jf;

    // Base tile: deepest backward tile [G^{-jb}(w), G^{-jb+1}(w)].
    double b_lo, b_hi;
    if (jb == 0) {
      b_lo = std::min(w, gval(w));
      b_hi = std::max(w, gval(w));
    } else {
      b_lo = std::min(chain[jb], chain[jb - 1]);
      b_hi = std::max(chain[jb], chain[jb - 1]);
    }
    base_lo_ = b_lo;
    base_w_ = b_hi - b_lo;
    n_cells_ = n_cells;
  }

  // Runs the orbit per node and accumulates either the integral
  // sum_i int_B |P_{i+n} - P_i| (c1ac) or the sup over windows of
  // |L_{i+n} - L_i - len*offset| (c1 metrics) for every n in `ns`.
  void run(const std::vector<long>& ns, std::vector<double>& acc) const {
    const long jt = j_total_;
    std::vector<double> L(jt + 1), P(integral_ ? jt + 1 : 0);
    const std::size_t s_count = n_cells_ + 1;
    const double h = base_w_ / static_cast<double>(n_cells_);
    for (std::size_t s = 0; s < s_count; ++s) {
      const double tau = base_lo_ + h * static_cast<double>(s);
      double y = tau;
      L[0] = 0.0;
      if (integral_) P[0] = 0.0;
      for (long j = 0; j < jt; ++j) {
        const double dp = f_.derivative(y);
        if (integral_) {
          const double expL = std::exp(std::min(L[j], 700.0));
          P[j + 1] = P[j] + (f_.second_derivative(y) / dp) * expL;
        }
        L[j + 1] = L[j] + std::log(dp);
        y = gval(y);
      }
      double weight = 1.0;
      if (integral_) {
        weight = (s == 0 || s == n_cells_) ? h / 3.0
                 : (s % 2 == 1)            ? 4.0 * h / 3.0
                                           : 2.0 * h / 3.0;
      }
      for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const long n = ns[ni];
        if (integral_) {
          double total = 0.0;
          for (long i = -n + 1; i < jt; ++i) {
            const long lo = std::max(i, 0L);
            const long hi = std::min(i + n, jt);
            if (hi <= lo) continue;
            total += std::abs(P[hi] - P[lo]);
          }
          acc[ni] += weight * total;
        } else {
          double best = acc[ni];
          for (long i = -n + 1; i < jt; ++i) {
            const long lo = std::max(i, 0L);
            const long hi = std::min(i + n, jt);
            if (hi <= lo) continue;
            const double v = std::abs(L[hi] - L[lo] -
                                      static_cast<double>(hi - lo) * offset_);
            if (v > best) best = v;
          }
          acc[ni] = best;
        }
      }
    }
  }

 private:
  double gval(double x) const { return f_.value(x) - k_; }

  const DiffeoMap& f_;
  double k_;
  bool integral_;
  double offset_;
  long j_total_ = 0;
  double base_lo_ = 0.0;
  double base_w_ = 0.0;
  std::size_t n_cells_ = 0;
};

// d(f^n, e) for every n in `ns`, via the window evaluator when possible.
// Returns false if the map has no fixed points (caller falls back to direct
// evaluation).
bool iterate_distances_windowed(const DiffeoMap& f, const std::vector<long>& ns,
                                MetricId metric, std::vector<double>& out) {
  const bool integral = metric == MetricId::C1AC || metric == MetricId::NavasTV;
  const FixedStructure fs = fixed_structure(f);
  if (fs.continuum) {
    out.assign(ns.size(), 0.0);
    return true;
  }
  if (fs.none) return false;

  const double offset =
      metric == MetricId::C1Interval ? std::log(f.derivative(0.0)) : 0.0;
  out.assign(ns.size(), 0.0);

  // Wandering intervals between consecutive fixed points.
  std::vector<std::pair<double, double>> intervals;
  const auto& pts = fs.points;
  if (f.domain() == Domain::Interval) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      intervals.emplace_back(pts[i], pts[i + 1]);
  } else {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double a = pts[i];
      const double b = i + 1 < pts.size() ? pts[i + 1] : pts[0] + 1.0;
      intervals.emplace_back(a, b);
    }
  }

  const long cap_back = integral ? 32768 : 8192;
  const long cap_fwd = cap_back;
  const std::size_t cells = integral ? 512 : 1024;
  for (const auto& [a, b] : intervals) {
    if (b - a < 1e-9) continue;
    WindowAccumulator acc(f, fs.k_offset, a, b, integral, offset, cap_back,
                          cap_fwd, cells);
    acc.run(ns, out);
  }

  if (!integral) {
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      for (double p : pts) {
        const double term =
            std::abs(static_cast<double>(ns[ni]) *
                     (std::log(f.derivative(p)) - offset));
        out[ni] = std::max(out[ni], term);
      }
    }
  }
  return true;
}

double iterate_distance_direct(const DiffeoMap& f, long n, MetricId metric) {
  const DiffeoMap fn = iterate(f, n);
  return metric_distance(metric, fn, DiffeoMap::identity(f.domain()));
}

void check_metric_applicability(const DiffeoMap& f, MetricId metric) {
  switch (metric) {
    case MetricId::C1Circle:
      if (f.domain() != Domain::Circle)
        throw DomainMismatch("c1-circle distances require circle maps");
      break;
    case MetricId::C1Interval:
      if (f.domain() != Domain::Interval)
        throw DomainMismatch("c1-interval distances require interval maps");
      break;
    case MetricId::C1AC:
    case MetricId::NavasTV:
    case MetricId::PolishRho:
      if (f.smoothness() == Smoothness::C1)
        throw OrderUnsupported("metric requires smoothness >= C1AC");
      break;
    default:
      break;
  }
}

}  // namespace

double iterate_distance(const DiffeoMap& f, long n, MetricId metric) {
  return iterate_distances(f, {n}, metric)[0];
}

std::vector<double> iterate_distances(const DiffeoMap& f,
                                      const std::vector<long>& ns,
                                      MetricId metric) {
  check_metric_applicability(f, metric);
  std::vector<long> positive;
  for (long n : ns)
    positive.push_back(n < 0 ? -n : n);  // d(f^-n, e) = d(e, f^n) = d(f^n, e)
  const bool windowable = metric == MetricId::C1Circle ||
                          metric == MetricId::C1Interval ||
                          metric == MetricId::C1AC || metric == MetricId::NavasTV;
  std::vector<double> out;
  if (windowable && iterate_distances_windowed(f, positive, metric, out)) {
    for (std::size_t i = 0; i < positive.size(); ++i)
      if (positive[i] == 0) out[i] = 0.0;
    return out;
  }
  out.clear();
  for (long n : positive)
    out.push_back(n == 0 ? 0.0 : iterate_distance_direct(f, n, metric));
  return out;
}

DistortionReport asymptotic_distortion(const DiffeoMap& f, MetricId metric,
                                       long n_max) {
  check_metric_applicability(f, metric);
  if (n_max < 1) throw BudgetExceeded("asymptotic_distortion: n_max must be >= 1");
  DistortionReport rep;
  rep.metric = metric;
  rep.map_hash = f.descriptor_hash();
  for (long n = 1; n < n_max; n *= 2) rep.schedule.push_back(n);
  rep.schedule.push_back(n_max);

  const bool windowable = metric == MetricId::C1Circle ||
                          metric == MetricId::C1Interval ||
                          metric == MetricId::C1AC || metric == MetricId::NavasTV;
  bool done = false;
  if (windowable) {
    std::vector<double> d;
    if (iterate_distances_windowed(f, rep.schedule, metric, d)) {
      rep.distances = std::move(d);
      done = true;
    }
  }
  if (!done) {
    for (long n : rep.schedule)
      rep.distances.push_back(iterate_distance_direct(f, n, metric));
  }

  double run = 1e308;
  for (std::size_t i = 0; i < rep.schedule.size(); ++i) {
    const double r = rep.distances[i] / static_cast<double>(rep.schedule[i]);
    rep.ratios.push_back(r);
    run = std::min(run, r);
    rep.running_inf.push_back(run);
  }
  rep.limit_estimate = rep.running_inf.back();

  const std::size_t k = rep.ratios.size();
  bool nonincreasing3 = false, stable3 = false;
  if (k >= 3) {
    const double r0 = rep.ratios[k - 3], r1 = rep.ratios[k - 2], r2 = rep.ratios[k - 1];
    nonincreasing3 = r0 >= r1 - 1e-12 && r1 >= r2 - 1e-12;
    const double hi = std::max({r0, r1, r2});
    const double lo = std::min({r0, r1, r2});
    stable3 = (hi - lo) <= std::max(0.25 * hi, 1e-9);
  }
  if (rep.limit_estimate < rep.distorted_threshold && nonincreasing3)
    rep.verdict = ReportVerdict::LikelyDistorted;
  else if (rep.limit_estimate > rep.undistorted_threshold && stable3)
    rep.verdict = ReportVerdict::LikelyUndistorted;
  else
    rep.verdict = ReportVerdict::Inconclusive;
  return rep;
}

// ---------------------------------------------------------------------------
// Orbit-sum lower bound
// ---------------------------------------------------------------------------

namespace {

// Returns +1 / -1 for the sign of f'' on [a, b] (sampled); 0 when vanishing.
int interval_sign(const DiffeoMap& f, double a, double b, long i) {
  int sign = 0;
  for (int s = 0; s <= 32; ++s) {
    const double x = a + (b - a) * static_cast<double>(s) / 32.0;
    const double v = f.second_derivative(x);
    if (std::abs(v) <= 1e-12) continue;
    const int sv = v > 0.0 ? 1 : -1;
    if (sign == 0)
      sign = sv;
    else if (sign != sv)
      throw SignConditionViolated(
          "lemma_orbit_sum: f'' changes sign on orbit interval i=" +
          std::to_string(i) + " near x=" + std::to_string(x));
  }
  return sign;
}

}  // namespace

double lemma_orbit_sum(const DiffeoMap& f, double a, double b, double tail_tol) {
  if (f.smoothness() == Smoothness::C1)
    throw OrderUnsupported("lemma_orbit_sum requires smoothness >= C1AC");
  if (!(a < b))
    throw SignConditionViolated("lemma_orbit_sum: need a < b");

  int global_sign = 0;
  auto note_sign = [&](double lo, double hi, long i) {
    const int s = interval_sign(f, lo, hi, i);
    if (s == 0) return;
    if (global_sign == 0)
      global_sign = s;
    else if (global_sign != s)
      throw SignConditionViolated(
          "lemma_orbit_sum: sign of f'' flips between orbit intervals at i=" +
          std::to_string(i));
  };
  auto term_of = [&](double lo, double hi) {
    auto integrand = [&](double x) { return nonlinearity(f, x); };
    return adaptive_simpson(integrand, lo, hi, 1e-13);
  };

  note_sign(a, b, 0);
  double total = term_of(a, b);

  // Forward orbit of the interval.
  const long cap = defaults::kLemmaMaxIntervals;
  double lo = a, hi = b;
  long i = 1;
  for (;; ++i) {
    if (i > cap) throw NonConvergentTail("lemma_orbit_sum: forward tail did not converge");
    const double nlo = f.value(lo);
    const double nhi = f.value(hi);
    const bool fwd_asc = nlo >= lo;
    if (fwd_asc ? nlo < hi - 1e-12 : nhi > lo + 1e-12)
      throw SignConditionViolated("lemma_orbit_sum: orbit intervals overlap at i=" +
                                  std::to_string(i));
    lo = nlo;
    hi = nhi;
    note_sign(lo, hi, i);
    const double term = term_of(lo, hi);
    total += term;
    if (std::abs(term) < tail_tol) break;
  }

  // Backward orbit.
  const DiffeoMap g = invert(f);
  lo = a;
  hi = b;
  for (long j = 1;; ++j) {
    if (j > cap) throw NonConvergentTail("lemma_orbit_sum: backward tail did not converge");
    const double nlo = g.value(lo);
    const double nhi = g.value(hi);
    const bool bwd_desc = nlo <= lo;
    if (bwd_desc ? nhi > lo + 1e-12 : nlo < hi - 1e-12)
      throw SignConditionViolated("lemma_orbit_sum: orbit intervals overlap at i=-" +
                                  std::to_string(j));
    lo = nlo;
    hi = nhi;
    note_sign(lo, hi, -j);
    const double term = term_of(lo, hi);
    total += term;
    if (std::abs(term) < tail_tol) break;
  }

  return std::abs(total);
}

// ---------------------------------------------------------------------------
// Discrete distortion witness
// ---------------------------------------------------------------------------

DiscreteWitness discrete_distortion_witness(int n) {
  if (n < 0 || n > 12)
    throw BudgetExceeded("discrete_distortion_witness: need 0 <= n <= 12");
  const MobiusPair pair = prop2_pair();
  const DiffeoMap word =
      compose(iterate(pair.g, n), compose(pair.f, iterate(pair.g, -n)));
  const DiffeoMap target = iterate(pair.f, 1L << n);
  auto diff = [&](double x) {
    return circle_distance(word.value(x), target.value(x));
  };
  DiscreteWitness out;
  out.word_length = 2L * n + 1;
  out.residual = grid_sup_abs(diff, 0.0, 1.0, 1024, /*periodic=*/true);
  out.ratio = static_cast<double>(out.word_length) /
              static_cast<double>(1L << n);
  return out;
}

// ---------------------------------------------------------------------------
// Report serialisation
// ---------------------------------------------------------------------------

nlohmann::json report_to_json(const DistortionReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < r.schedule.size(); ++i) {
    rows.push_back({{"n", r.schedule[i]},
                    {"distance", r.distances[i]},
                    {"ratio", r.ratios[i]},
                    {"running_inf", r.running_inf[i]}});
  }
  return {{"schema", "circdist.distortion-report.v1"},
          {"metric", to_string(r.metric)},
          {"map_hash", r.map_hash},
          {"limit_estimate", r.limit_estimate},
          {"verdict", to_string(r.verdict)},
          {"thresholds",
           {{"distorted", r.distorted_threshold},
            {"undistorted", r.undistorted_threshold}}},
          {"rows", rows}};
}

std::string report_to_csv(const DistortionReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "# metric=" << to_string(r.metric) << "\n";
  out << "# map_hash=" << r.map_hash << "\n";
  out << "# verdict=" << to_string(r.verdict) << "\n";
  out << "n,distance,ratio,running_inf\n";
  for (std::size_t i = 0; i < r.schedule.size(); ++i) {
    out << r.schedule[i] << "," << r.distances[i] << "," << r.ratios[i] << ","
        << r.running_inf[i] << "\n";
  }
  return out.str();
}

}  // namespace circdist
