#include "circdist/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "circdist/errors.hpp"
#include "circdist/quadrature.hpp"

namespace circdist {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

DiffeoMap rotation(double theta) { return DiffeoMap::rotation(theta); }

DiffeoMap mobius_circle(double a, double b, double c, double d) {
  return DiffeoMap::mobius(a, b, c, d);
}

MobiusPair prop2_pair() {
  MobiusPair pair{DiffeoMap::mobius(1.0, 0.0, 1.0, 1.0),
                  DiffeoMap::mobius(1.0, 0.0, 0.0, 2.0), 0.0, 0.0};
  const DiffeoMap lhs = compose(pair.g, compose(pair.f, invert(pair.g)));
  const DiffeoMap rhs = iterate(pair.f, 2);
  auto diff = [&](double x) {
    return circle_distance(lhs.value(x), rhs.value(x));
  };
  pair.relation_residual = grid_sup_abs(diff, 0.0, 1.0, 1 << 10, true);
  return pair;
}

ChartCurvature chart_second_derivative(const MobiusPair& pair) {
  const double x0 = pair.fixed_angle;
  ChartCurvature out;
  out.first_derivative = pair.f.derivative(x0);
  // At a parabolic fixed point the chart-conjugated second derivative equals
  // the nonlinearity divided by the chart derivative; the chart w = i log z
  // reverses the angle orientation, flipping the sign.
  const double n0 = nonlinearity(pair.f, x0);
  out.angle_chart = -n0 * out.first_derivative;  // = -f''(x0) when f'(x0) = 1
  out.psi_chart = out.angle_chart / (2.0 * kPi);
  return out;
}

// ---------------------------------------------------------------------------
// Theorem-3 style construction
// ---------------------------------------------------------------------------

namespace {

double log_int_psi_m(long m) {
  double acc = 0.0;
  for (long j = 1; j <= m; ++j)
    acc += std::log((2.0 * static_cast<double>(j) - 1.0) / static_cast<double>(j));
  return acc;
}

double a_m_of(long m, double log_im) {
  const double s_star = std::exp(log_im / static_cast<double>(m - 1));
  return std::acos(1.0 - s_star) / (2.0 * kPi);
}

// f'' in closed form, without building tables.
double fpp_closed(double K, long m, double log_im, double x) {
  const double s = std::sin(kPi * x);
  const double psi = 2.0 * s * s;
  if (psi <= 0.0) return 0.0;
  const double spike =
      std::exp(static_cast<double>(m - 1) * std::log(psi) - log_im);
  return K * psi * (1.0 - spike);
}

// f(p) = p + int_0^p (p - s) f''(s) ds, by quadrature of the closed form.
double f_at_p(double K, long m, double log_im, double p) {
  auto integrand = [&](double s) { return (p - s) * fpp_closed(K, m, log_im, s); };
  return p + adaptive_simpson(integrand, 0.0, p, 1e-13);
}

bool conditions_hold(double K, long m, double log_im, double p) {
  const double am = a_m_of(m, log_im);
  if (!(am > p)) return false;
  if (!(1.0 - am < 1.0 - p)) return false;
  return f_at_p(K, m, log_im, p) > 1.0 - p;
}

}  // namespace

Theorem3Build theorem3_build(double K, std::optional<long> m_opt,
                             std::size_t n_samples) {
  if (!(K > 0.0 && K <= 2.0))
    throw BadK("theorem3_build: need 0 < K <= 2, got " + std::to_string(K));
  const double p = (20.0 - K) / 40.0;

  long m = 0;
  if (m_opt) {
    m = *m_opt;
    if (m < 2) throw ConditionFailure("theorem3_build: need m >= 2");
  } else {
    for (long cand = defaults::kMSearchStart; cand <= defaults::kMSearchCap;
         cand *= 2) {
      const double log_im = log_int_psi_m(cand);
      if (conditions_hold(K, cand, log_im, p)) {
        m = cand;
        break;
      }
    }
    if (m == 0) {
      const double am_cap = a_m_of(defaults::kMSearchCap,
                                   log_int_psi_m(defaults::kMSearchCap));
      throw ConditionFailure(
          "theorem3_build: conditions not met up to m = " +
          std::to_string(defaults::kMSearchCap) +
          " (a_m = " + std::to_string(am_cap) + ", p = " + std::to_string(p) + ")");
    }
  }

  Theorem3Build out{DiffeoMap::theorem3(K, m, n_samples), {}};
  const Theorem3Params* prm = theorem3_params(out.map);
  Theorem3Certificate& c = out.cert;
  c.K = K;
  c.m = m;
  c.c_m = prm->c_m;
  c.log_c_m = prm->log_c_m;
  c.a_m = prm->a_m;
  c.b_m = prm->b_m;
  c.p = p;
  c.f_p = out.map.value(p);
  auto fp = [&](double x) { return out.map.derivative(x); };
  c.sup_fprime = grid_max(fp, 0.0, 1.0, defaults::kQuadIntervals, true);
  auto abs_fpp = [&](double x) { return std::abs(out.map.second_derivative(x)); };
  c.int_abs_f2 = adaptive_simpson(abs_fpp, 0.0, 1.0, 1e-10);

  c.f_p_gt_1_minus_p = c.f_p > 1.0 - p;
  c.a_m_gt_p = c.a_m > p;
  c.b_m_lt_1_minus_p = c.b_m < 1.0 - p;
  c.int_bound_ok = c.int_abs_f2 <= 2.0 * K + 1e-6;

  // Normaliser consistency: c_m * int psi^m = K, checked in log space against
  // an independent quadrature of int (psi/2)^m.
  auto half_psi_m = [&](double x) {
    const double s = std::sin(kPi * x);
    const double s2 = s * s;
    if (s2 <= 0.0) return 0.0;
    return std::exp(static_cast<double>(m) * std::log(s2));
  };
  const double w_quad = adaptive_simpson(half_psi_m, 0.0, 1.0, 1e-14);
  const double w_closed =
      std::exp(prm->log_int_psi_m - static_cast<double>(m) * std::log(2.0));
  if (std::abs(w_quad - w_closed) > 1e-9 * std::max(1.0, w_closed))
    throw ConditionFailure("theorem3_build: Wallis normaliser cross-check failed");

  if (m_opt && !c.conditions_ok())
    throw ConditionFailure("theorem3_build: supplied m does not satisfy the conditions");
  return out;
}

double theorem3_lower_bound(const DiffeoMap& map, Theorem3Certificate& cert,
                            double tail_tol) {
  const double a = cert.b_m;
  const double b = map.value(cert.a_m);
  cert.lower_bound = lemma_orbit_sum(map, a, b, tail_tol);
  cert.positive_lower_bound = cert.lower_bound > 0.0;
  return cert.lower_bound;
}

// ---------------------------------------------------------------------------
// Rotation sweep
// ---------------------------------------------------------------------------

SweepTable rotation_sweep(const DiffeoMap& f, const std::vector<double>& thetas) {
  if (f.domain() != Domain::Circle)
    throw DomainMismatch("rotation_sweep requires a circle map");
  SweepTable table;
  std::vector<double> sorted = thetas;
  std::sort(sorted.begin(), sorted.end());
  for (double theta : sorted) {
    const DiffeoMap rf = compose(rotation(theta), f);
    const RotationNumber rn = rotation_number(rf);
    table.entries.push_back({theta, rn.estimate, rn.rational});
  }
  // Mode-locking plateaus: >= 3 consecutive entries with the same rational.
  std::size_t run_start = 0;
  auto same = [](const std::optional<Rational>& a, const std::optional<Rational>& b) {
    return a && b && a->p == b->p && a->q == b->q;
  };
  for (std::size_t i = 1; i <= table.entries.size(); ++i) {
    const bool extend = i < table.entries.size() &&
                        same(table.entries[i].rational, table.entries[run_start].rational);
    if (extend) continue;
    const std::size_t len = i - run_start;
    if (len >= 3 && table.entries[run_start].rational) {
      Plateau pl;
      pl.value = *table.entries[run_start].rational;
      pl.theta_lo = table.entries[run_start].theta;
      pl.theta_hi = table.entries[i - 1].theta;
      const double mid = 0.5 * (pl.theta_lo + pl.theta_hi);
      const DiffeoMap rf = compose(rotation(mid), f);
      pl.confirmed = !periodic_points(rf, pl.value.q).points.empty();
      table.plateaus.push_back(pl);
    }
    run_start = i;
  }
  return table;
}

nlohmann::json certificate_to_json(const Theorem3Certificate& c) {
  return {{"schema", "circdist.theorem3-certificate.v1"},
          {"K", c.K},
          {"m", c.m},
          {"c_m", c.c_m},
          {"log_c_m", c.log_c_m},
          {"a_m", c.a_m},
          {"b_m", c.b_m},
          {"p", c.p},
          {"f_p", c.f_p},
          {"sup_fprime", c.sup_fprime},
          {"int_abs_f2", c.int_abs_f2},
          {"lower_bound", c.lower_bound},
          {"conditions",
           {{"f_p_gt_1_minus_p", c.f_p_gt_1_minus_p},
            {"a_m_gt_p", c.a_m_gt_p},
            {"b_m_lt_1_minus_p", c.b_m_lt_1_minus_p},
            {"int_bound_ok", c.int_bound_ok},
            {"positive_lower_bound", c.positive_lower_bound}}}};
}

}  // namespace circdist
