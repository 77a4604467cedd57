#include "circdist/diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "circdist/errors.hpp"
#include "circdist/root_finding.hpp"

namespace circdist {

namespace {

constexpr double kPi = 3.14159265358979323846;

int smoothness_rank(Smoothness s) {
  switch (s) {
    case Smoothness::C1: return 0;
    case Smoothness::C1AC: return 1;
    case Smoothness::C2: return 2;
    case Smoothness::Analytic: return 3;
  }
  return 0;
}

}  // namespace

Smoothness min_smoothness(Smoothness a, Smoothness b) {
  return smoothness_rank(a) <= smoothness_rank(b) ? a : b;
}

std::string to_string(Domain d) {
  return d == Domain::Circle ? "circle" : "interval";
}

std::string to_string(Smoothness s) {
  switch (s) {
    case Smoothness::C1: return "c1";
    case Smoothness::C1AC: return "c1ac";
    case Smoothness::C2: return "c2";
    case Smoothness::Analytic: return "analytic";
  }
  return "c1";
}

namespace {

Smoothness smoothness_from_string(const std::string& s) {
  if (s == "c1") return Smoothness::C1;
  if (s == "c1ac") return Smoothness::C1AC;
  if (s == "c2") return Smoothness::C2;
  if (s == "analytic") return Smoothness::Analytic;
  throw ParseError("unknown smoothness tag: " + s);
}

}  // namespace

double circle_distance(double a, double b) {
  const double d = a - b;
  const double f = d - std::floor(d);
  return std::min(f, 1.0 - f);
}

// ---------------------------------------------------------------------------
// Node hierarchy
// ---------------------------------------------------------------------------

class MapNode {
 public:
  MapNode(Domain d, Smoothness s) : domain_(d), smooth_(s) {}
  virtual ~MapNode() = default;

  virtual double value(double x) const = 0;
  virtual double deriv(double x) const = 0;
  virtual double second(double x) const = 0;
  virtual nlohmann::json to_json() const = 0;

  Domain domain() const { return domain_; }
  Smoothness smoothness() const { return smooth_; }

 private:
  Domain domain_;
  Smoothness smooth_;
};

namespace {

double frac(double x) { return x - std::floor(x); }

// Displacement bounds of a lift (sup/inf of F(x)-x), sampled coarsely. Used
// to seed inversion brackets; the solver expands them if the samples missed
// the true extrema.
struct DispBounds {
  double lo = 0.0;
  double hi = 0.0;
};

DispBounds sample_disp(const MapNode& n) {
  DispBounds b;
  b.lo = 1e300;
  b.hi = -1e300;
  for (int i = 0; i <= 32; ++i) {
    const double x = static_cast<double>(i) / 32.0;
    const double d = n.value(x) - x;
    b.lo = std::min(b.lo, d);
    b.hi = std::max(b.hi, d);
  }
  return b;
}

double invert_point(const MapNode& base, const DispBounds& disp, double x) {
  double lo, hi;
  if (base.domain() == Domain::Interval) {
    lo = 0.0;
    hi = 1.0;
    x = std::clamp(x, 0.0, 1.0);
  } else {
    lo = x - disp.hi - 0.25;
    hi = x - disp.lo + 0.25;
    int guard = 0;
    while (base.value(lo) > x && ++guard < 64) lo -= 0.5;
    while (base.value(hi) < x && ++guard < 64) hi += 0.5;
  }
  auto g = [&](double y) { return base.value(y) - x; };
  auto dg = [&](double y) { return base.deriv(y); };
  return solve_increasing(g, dg, lo, hi);
}

class IdentityNode final : public MapNode {
 public:
  explicit IdentityNode(Domain d) : MapNode(d, Smoothness::Analytic) {}
  double value(double x) const override { return x; }
  double deriv(double) const override { return 1.0; }
  double second(double) const override { return 0.0; }
  nlohmann::json to_json() const override { return {{"type", "identity"}}; }
};

class RotationNode final : public MapNode {
 public:
  explicit RotationNode(double theta)
      : MapNode(Domain::Circle, Smoothness::Analytic), theta_(theta) {}
  double value(double x) const override { return x + theta_; }
  double deriv(double) const override { return 1.0; }
  double second(double) const override { return 0.0; }
  nlohmann::json to_json() const override {
    return {{"type", "rotation"}, {"theta", theta_}};
  }
  double theta() const { return theta_; }

 private:
  double theta_;
};

class MobiusNode final : public MapNode {
 public:
  MobiusNode(double a, double b, double c, double d)
      : MapNode(Domain::Circle, Smoothness::Analytic), raw_{a, b, c, d} {
    const double det = a * d - b * c;
    if (!(det > 0.0))
      throw DegenerateMatrix("mobius: need ad - bc > 0, got det = " +
                             std::to_string(det));
    const double s = 1.0 / std::sqrt(det);
    na_ = a * s;
    nb_ = b * s;
    nc_ = c * s;
    nd_ = d * s;
    y0_ = angle_of(0.0);
  }

  double value(double x) const override {
    const double k = std::floor(x);
    const double t = x - k;
    double y = angle_of(t);
    if (y < y0_) y += 1.0;  // unwrap: the image winds once per period
    return y + k;
  }

  double deriv(double x) const override {
    double u, v;
    image_vec(frac(x), u, v);  // squares are 1-periodic; reduce for precision
    return 1.0 / (u * u + v * v);
  }

  double second(double x) const override {
    x = frac(x);
    const double s = std::sin(kPi * x), c = std::cos(kPi * x);
    const double u = na_ * s + nb_ * c;
    const double v = nc_ * s + nd_ * c;
    const double du = kPi * (na_ * c - nb_ * s);
    const double dv = kPi * (nc_ * c - nd_ * s);
    const double q = u * u + v * v;
    return -2.0 * (u * du + v * dv) / (q * q);
  }

  nlohmann::json to_json() const override {
    return {{"type", "mobius"}, {"a", raw_.a}, {"b", raw_.b}, {"c", raw_.c},
            {"d", raw_.d}};
  }

  const MobiusCoeffs& raw() const { return raw_; }

 private:
  void image_vec(double x, double& u, double& v) const {
    const double s = std::sin(kPi * x), c = std::cos(kPi * x);
    u = na_ * s + nb_ * c;
    v = nc_ * s + nd_ * c;
  }
  double angle_of(double t) const {
    double u, v;
    image_vec(t, u, v);
    return frac(std::atan2(u, v) / kPi);
  }

  MobiusCoeffs raw_;
  double na_, nb_, nc_, nd_;  // det-normalised coefficients
  double y0_;                 // image angle of x = 0
};

// f'' = K*psi - c_m*psi^m with psi(x) = 1 - cos(2 pi x) = 2 sin^2(pi x).
// c_m int psi^m = K, so the spike term is K * exp((m-1) log psi - log I_m) * psi,
// evaluated in log space because I_m ~ 2^m overflows for large m.
class Theorem3Node final : public MapNode {
 public:
  Theorem3Node(double K, long m, std::size_t n_samples)
      : MapNode(Domain::Circle, Smoothness::Analytic), n_samples_(n_samples) {
    if (!(K > 0.0 && K <= 2.0))
      throw BadK("theorem3: need 0 < K <= 2, got " + std::to_string(K));
    if (m < 2) throw ConditionFailure("theorem3: need m >= 2");
    p_.K = K;
    p_.m = m;
    double log_im = 0.0;
    for (long j = 1; j <= m; ++j)
      log_im += std::log((2.0 * static_cast<double>(j) - 1.0) / static_cast<double>(j));
    p_.log_int_psi_m = log_im;
    p_.log_c_m = std::log(K) - log_im;
    p_.c_m = std::exp(p_.log_c_m);  // underflows to 0 for very large m
    const double s_star = std::exp(log_im / static_cast<double>(m - 1));
    p_.a_m = std::acos(1.0 - s_star) / (2.0 * kPi);
    p_.b_m = 1.0 - p_.a_m;

    auto fpp = [this](double x) { return this->second_closed(x); };
    fprime_ = GridFunction::antiderivative(fpp, n_samples, 1.0);
    auto fp = [this](double x) { return fprime_(x); };
    GridFunction f_raw = GridFunction::antiderivative(fp, n_samples, 0.0);
    // Renormalise so the lift satisfies F(1) = 1 exactly.
    std::vector<double> vals = f_raw.values();
    std::vector<double> slopes(vals.size());
    const double end = vals.back();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      vals[i] /= end;
      slopes[i] = fprime_(static_cast<double>(i) / static_cast<double>(n_samples)) / end;
    }
    f_ = GridFunction(std::move(vals), std::move(slopes));
  }

  double value(double x) const override {
    const double k = std::floor(x);
    return f_(x - k) + k;
  }
  double deriv(double x) const override { return fprime_(frac(x)); }
  double second(double x) const override { return second_closed(x); }

  nlohmann::json to_json() const override {
    return {{"type", "theorem3"}, {"K", p_.K}, {"m", p_.m},
            {"samples", n_samples_}};
  }

  const Theorem3Params& params() const { return p_; }

 private:
  double second_closed(double x) const {
    const double s = std::sin(kPi * frac(x));
    const double psi = 2.0 * s * s;
    if (psi <= 0.0) return 0.0;
    const double spike = std::exp(static_cast<double>(p_.m - 1) * std::log(psi) -
                                  p_.log_int_psi_m);
    return p_.K * psi * (1.0 - spike);
  }

  Theorem3Params p_;
  std::size_t n_samples_;
  GridFunction fprime_;
  GridFunction f_;
};

// Map reconstructed from its nonlinearity H = f''/f' via
// F(x) = int_0^x H, C = int_0^1 exp F, f = (1/C) int_0^x exp F.
class FromNonlinearityNode final : public MapNode {
 public:
  FromNonlinearityNode(GridFunction H, Domain d)
      : MapNode(d, Smoothness::C1AC), h_(std::move(H)) {
    const std::size_t n = h_.n_samples();
    auto h_fn = [this](double x) { return h_(x); };
    bigF_ = GridFunction::antiderivative(h_fn, n, 0.0);
    auto expF = [this](double x) { return std::exp(bigF_(x)); };
    GridFunction raw = GridFunction::antiderivative(expF, n, 0.0);
    c_ = raw.values().back();
    if (!(c_ > 0.0) || !std::isfinite(c_))
      throw QuadratureFailure("from_nonlinearity: degenerate normaliser");
    std::vector<double> vals = raw.values();
    std::vector<double> slopes(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      vals[i] /= c_;
      slopes[i] =
          std::exp(bigF_(static_cast<double>(i) / static_cast<double>(n))) / c_;
    }
    f_ = GridFunction(std::move(vals), std::move(slopes));
  }

  double value(double x) const override {
    if (domain() == Domain::Interval) return f_(std::clamp(x, 0.0, 1.0));
    const double k = std::floor(x);
    return f_(x - k) + k;
  }
  double deriv(double x) const override {
    const double t = domain() == Domain::Interval ? std::clamp(x, 0.0, 1.0) : frac(x);
    return std::exp(bigF_(t)) / c_;
  }
  double second(double x) const override {
    const double t = domain() == Domain::Interval ? std::clamp(x, 0.0, 1.0) : frac(x);
    return h_(t) * (std::exp(bigF_(t)) / c_);
  }

  nlohmann::json to_json() const override {
    return {{"type", "from-nonlinearity"},
            {"interp", h_.interp() == Interp::Linear ? "linear" : "monotone-cubic"},
            {"samples", h_.values()}};
  }

  const GridFunction& H() const { return h_; }
  double normaliser() const { return c_; }

 private:
  GridFunction h_;
  GridFunction bigF_;
  GridFunction f_;
  double c_ = 1.0;
};

class ComposeNode final : public MapNode {
 public:
  ComposeNode(std::shared_ptr<const MapNode> outer,
              std::shared_ptr<const MapNode> inner)
      : MapNode(outer->domain(),
                min_smoothness(outer->smoothness(), inner->smoothness())),
        outer_(std::move(outer)),
        inner_(std::move(inner)) {}

  double value(double x) const override { return outer_->value(inner_->value(x)); }
  double deriv(double x) const override {
    const double g = inner_->value(x);
    return outer_->deriv(g) * inner_->deriv(x);
  }
  double second(double x) const override {
    const double g = inner_->value(x);
    const double gp = inner_->deriv(x);
    return outer_->second(g) * gp * gp + outer_->deriv(g) * inner_->second(x);
  }
  nlohmann::json to_json() const override {
    return {{"type", "compose"}, {"outer", outer_->to_json()},
            {"inner", inner_->to_json()}};
  }

 private:
  std::shared_ptr<const MapNode> outer_;
  std::shared_ptr<const MapNode> inner_;
};

class InverseNode final : public MapNode {
 public:
  explicit InverseNode(std::shared_ptr<const MapNode> base)
      : MapNode(base->domain(), base->smoothness()),
        base_(std::move(base)),
        disp_(sample_disp(*base_)) {}

  double value(double x) const override { return invert_point(*base_, disp_, x); }
  double deriv(double x) const override {
    const double y = value(x);
    return 1.0 / base_->deriv(y);
  }
  double second(double x) const override {
    const double y = value(x);
    const double dp = base_->deriv(y);
    return -base_->second(y) / (dp * dp * dp);
  }
  nlohmann::json to_json() const override {
    return {{"type", "inverse"}, {"of", base_->to_json()}};
  }
  std::shared_ptr<const MapNode> base() const { return base_; }

 private:
  std::shared_ptr<const MapNode> base_;
  DispBounds disp_;
};

class PowerNode final : public MapNode {
 public:
  PowerNode(std::shared_ptr<const MapNode> base, long n)
      : MapNode(base->domain(), base->smoothness()),
        base_(std::move(base)),
        n_(n) {
    if (n_ < 0) disp_ = sample_disp(*base_);
  }

  double value(double x) const override {
    double y = x;
    if (n_ >= 0) {
      for (long k = 0; k < n_; ++k) y = base_->value(y);
    } else {
      for (long k = 0; k < -n_; ++k) y = invert_point(*base_, disp_, y);
    }
    return y;
  }

  double deriv(double x) const override { return std::exp(log_deriv(x)); }

  double second(double x) const override {
    // (f^n)'' = N_{f^n} * (f^n)'
    double acc_n = 0.0, acc_log = 0.0;
    double y = x;
    if (n_ >= 0) {
      for (long k = 0; k < n_; ++k) {
        const double dp = base_->deriv(y);
        acc_n += (base_->second(y) / dp) * std::exp(acc_log);
        acc_log += std::log(dp);
        y = base_->value(y);
      }
    } else {
      for (long k = 0; k < -n_; ++k) {
        y = invert_point(*base_, disp_, y);
        const double dp = base_->deriv(y);
        acc_n += -(base_->second(y) / dp) / dp * std::exp(acc_log);
        acc_log -= std::log(dp);
      }
    }
    return acc_n * std::exp(acc_log);
  }

  double log_deriv(double x) const {
    double acc = 0.0;
    double y = x;
    if (n_ >= 0) {
      for (long k = 0; k < n_; ++k) {
        acc += std::log(base_->deriv(y));
        y = base_->value(y);
      }
    } else {
      for (long k = 0; k < -n_; ++k) {
        y = invert_point(*base_, disp_, y);
        acc -= std::log(base_->deriv(y));
      }
    }
    return acc;
  }

  nlohmann::json to_json() const override {
    return {{"type", "power"}, {"base", base_->to_json()}, {"n", n_}};
  }
  std::shared_ptr<const MapNode> base() const { return base_; }
  long exponent() const { return n_; }

 private:
  std::shared_ptr<const MapNode> base_;
  long n_;
  DispBounds disp_;
};

class BlendNode final : public MapNode {
 public:
  BlendNode(double t, std::shared_ptr<const MapNode> base)
      : MapNode(base->domain(), base->smoothness()), t_(t), base_(std::move(base)) {}

  double value(double x) const override {
    return t_ * x + (1.0 - t_) * base_->value(x);
  }
  double deriv(double x) const override {
    return t_ + (1.0 - t_) * base_->deriv(x);
  }
  double second(double x) const override { return (1.0 - t_) * base_->second(x); }
  nlohmann::json to_json() const override {
    return {{"type", "blend"}, {"t", t_}, {"of", base_->to_json()}};
  }

 private:
  double t_;
  std::shared_ptr<const MapNode> base_;
};

class SmoothnessTagNode final : public MapNode {
 public:
  SmoothnessTagNode(std::shared_ptr<const MapNode> base, Smoothness s)
      : MapNode(base->domain(), s), base_(std::move(base)) {}
  double value(double x) const override { return base_->value(x); }
  double deriv(double x) const override { return base_->deriv(x); }
  double second(double x) const override { return base_->second(x); }
  nlohmann::json to_json() const override {
    return {{"type", "smoothness"}, {"tag", to_string(smoothness())},
            {"of", base_->to_json()}};
  }

 private:
  std::shared_ptr<const MapNode> base_;
};

}  // namespace

// ---------------------------------------------------------------------------
// DiffeoMap
// ---------------------------------------------------------------------------

DiffeoMap::DiffeoMap() : node_(std::make_shared<IdentityNode>(Domain::Circle)) {}
DiffeoMap::DiffeoMap(std::shared_ptr<const MapNode> node) : node_(std::move(node)) {}

double DiffeoMap::value(double x) const { return node_->value(x); }
double DiffeoMap::derivative(double x) const { return node_->deriv(x); }
double DiffeoMap::second_derivative(double x) const { return node_->second(x); }

double DiffeoMap::evaluate(double x, int order) const {
  switch (order) {
    case 0: return value(x);
    case 1: return derivative(x);
    case 2:
      if (smoothness() == Smoothness::C1)
        throw OrderUnsupported("order 2 evaluation requires smoothness >= C1AC");
      return second_derivative(x);
    default:
      throw std::invalid_argument("evaluate: order must be 0, 1 or 2");
  }
}

Domain DiffeoMap::domain() const { return node_->domain(); }
Smoothness DiffeoMap::smoothness() const { return node_->smoothness(); }

DiffeoMap DiffeoMap::identity(Domain d) {
  return DiffeoMap(std::make_shared<IdentityNode>(d));
}

DiffeoMap DiffeoMap::rotation(double theta) {
  return DiffeoMap(std::make_shared<RotationNode>(theta));
}

DiffeoMap DiffeoMap::mobius(double a, double b, double c, double d) {
  return DiffeoMap(std::make_shared<MobiusNode>(a, b, c, d));
}

DiffeoMap DiffeoMap::from_nonlinearity(const GridFunction& H, Domain d) {
  if (d == Domain::Circle) {
    const double mean = H.integral();
    if (std::abs(mean) >= 1e-9)
      throw MeanNotZero("from_nonlinearity: circle realisability needs int H = 0, got " +
                        std::to_string(mean));
  }
  return DiffeoMap(std::make_shared<FromNonlinearityNode>(H, d));
}

DiffeoMap DiffeoMap::from_nonlinearity_fn(const std::function<double(double)>& H,
                                          std::size_t n_samples, Domain d) {
  return from_nonlinearity(GridFunction::sample(H, n_samples, Interp::MonotoneCubic), d);
}

DiffeoMap DiffeoMap::theorem3(double K, long m, std::size_t n_samples) {
  return DiffeoMap(std::make_shared<Theorem3Node>(K, m, n_samples));
}

DiffeoMap DiffeoMap::blend(double t, const DiffeoMap& f) {
  return DiffeoMap(std::make_shared<BlendNode>(t, f.node_ptr()));
}

DiffeoMap DiffeoMap::with_smoothness(Smoothness s) const {
  return DiffeoMap(std::make_shared<SmoothnessTagNode>(node_, s));
}

DiffeoMap compose(const DiffeoMap& f, const DiffeoMap& g) {
  if (f.domain() != g.domain())
    throw DomainMismatch("compose: maps live on different domains");
  if (dynamic_cast<const IdentityNode*>(&f.node())) return g;
  if (dynamic_cast<const IdentityNode*>(&g.node())) return f;
  return DiffeoMap(std::make_shared<ComposeNode>(f.node_ptr(), g.node_ptr()));
}

DiffeoMap invert(const DiffeoMap& f) {
  if (dynamic_cast<const IdentityNode*>(&f.node())) return f;
  if (auto inv = dynamic_cast<const InverseNode*>(&f.node()))
    return DiffeoMap(inv->base());
  if (auto pw = dynamic_cast<const PowerNode*>(&f.node()))
    return DiffeoMap(std::make_shared<PowerNode>(pw->base(), -pw->exponent()));
  return DiffeoMap(std::make_shared<InverseNode>(f.node_ptr()));
}

DiffeoMap iterate(const DiffeoMap& f, long n) {
  if (n == 0) return DiffeoMap::identity(f.domain());
  if (n == 1) return f;
  if (auto pw = dynamic_cast<const PowerNode*>(&f.node()))
    return DiffeoMap(std::make_shared<PowerNode>(pw->base(), n * pw->exponent()));
  return DiffeoMap(std::make_shared<PowerNode>(f.node_ptr(), n));
}

double log_deriv_iterate(const DiffeoMap& f, long n, double x) {
  if (n == 0) return 0.0;
  double acc = 0.0;
  double y = x;
  if (n > 0) {
    for (long k = 0; k < n; ++k) {
      acc += std::log(f.derivative(y));
      y = f.value(y);
    }
  } else {
    const DiffeoMap g = invert(f);
    for (long k = 0; k < -n; ++k) {
      y = g.value(y);
      acc -= std::log(f.derivative(y));
    }
  }
  return acc;
}

double nonlinearity_iterate(const DiffeoMap& f, long n, double x) {
  if (f.smoothness() == Smoothness::C1)
    throw OrderUnsupported("nonlinearity_iterate requires smoothness >= C1AC");
  if (n == 0) return 0.0;
  double acc_n = 0.0, acc_log = 0.0;
  double y = x;
  if (n > 0) {
    for (long k = 0; k < n; ++k) {
      const double dp = f.derivative(y);
      acc_n += (f.second_derivative(y) / dp) * std::exp(acc_log);
      acc_log += std::log(dp);
      y = f.value(y);
    }
  } else {
    const DiffeoMap g = invert(f);
    for (long k = 0; k < -n; ++k) {
      y = g.value(y);
      const double dp = f.derivative(y);
      acc_n -= (f.second_derivative(y) / dp) / dp * std::exp(acc_log);
      acc_log -= std::log(dp);
    }
  }
  return acc_n;
}

double nonlinearity(const DiffeoMap& f, double x) {
  return f.second_derivative(x) / f.derivative(x);
}

const Theorem3Params* theorem3_params(const DiffeoMap& f) {
  if (auto t3 = dynamic_cast<const Theorem3Node*>(&f.node())) return &t3->params();
  return nullptr;
}

const MobiusCoeffs* mobius_coeffs(const DiffeoMap& f) {
  if (auto mo = dynamic_cast<const MobiusNode*>(&f.node())) return &mo->raw();
  return nullptr;
}

// ---------------------------------------------------------------------------
// Serialisation
// ---------------------------------------------------------------------------

nlohmann::json DiffeoMap::descriptor() const {
  return {{"domain", to_string(domain())}, {"node", node_->to_json()}};
}

namespace {

std::shared_ptr<const MapNode> parse_node(const nlohmann::json& j, Domain d);

std::shared_ptr<const MapNode> parse_node_checked(const nlohmann::json& j, Domain d) {
  if (!j.is_object() || !j.contains("type"))
    throw ParseError("map descriptor node must be an object with a \"type\" field");
  return parse_node(j, d);
}

std::shared_ptr<const MapNode> parse_node(const nlohmann::json& j, Domain d) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "identity") return std::make_shared<IdentityNode>(d);
  if (type == "rotation") {
    if (d != Domain::Circle) throw ParseError("rotation nodes require the circle domain");
    return std::make_shared<RotationNode>(j.at("theta").get<double>());
  }
  if (type == "mobius") {
    if (d != Domain::Circle) throw ParseError("mobius nodes require the circle domain");
    return std::make_shared<MobiusNode>(j.at("a").get<double>(), j.at("b").get<double>(),
                                        j.at("c").get<double>(), j.at("d").get<double>());
  }
  if (type == "theorem3") {
    if (d != Domain::Circle) throw ParseError("theorem3 nodes require the circle domain");
    return std::make_shared<Theorem3Node>(j.at("K").get<double>(),
                                          j.at("m").get<long>(),
                                          j.at("samples").get<std::size_t>());
  }
  if (type == "from-nonlinearity") {
    const auto vals = j.at("samples").get<std::vector<double>>();
    const Interp interp = j.value("interp", std::string("monotone-cubic")) == "linear"
                              ? Interp::Linear
                              : Interp::MonotoneCubic;
    return std::make_shared<FromNonlinearityNode>(GridFunction(vals, interp), d);
  }
  if (type == "compose")
    return std::make_shared<ComposeNode>(parse_node_checked(j.at("outer"), d),
                                         parse_node_checked(j.at("inner"), d));
  if (type == "inverse")
    return std::make_shared<InverseNode>(parse_node_checked(j.at("of"), d));
  if (type == "power")
    return std::make_shared<PowerNode>(parse_node_checked(j.at("base"), d),
                                       j.at("n").get<long>());
  if (type == "blend")
    return std::make_shared<BlendNode>(j.at("t").get<double>(),
                                       parse_node_checked(j.at("of"), d));
  if (type == "smoothness")
    return std::make_shared<SmoothnessTagNode>(
        parse_node_checked(j.at("of"), d),
        smoothness_from_string(j.at("tag").get<std::string>()));
  throw ParseError("unknown map node type: " + type);
}

}  // namespace

DiffeoMap DiffeoMap::parse(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("node"))
    throw ParseError("map descriptor must carry \"domain\" and \"node\" fields");
  const std::string ds = j.at("domain").get<std::string>();
  Domain d;
  if (ds == "circle")
    d = Domain::Circle;
  else if (ds == "interval")
    d = Domain::Interval;
  else
    throw ParseError("unknown domain: " + ds);
  return DiffeoMap(parse_node_checked(j.at("node"), d));
}

DiffeoMap DiffeoMap::parse(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw ParseError("map descriptor is not valid JSON");
  return parse(j);
}

std::string DiffeoMap::descriptor_hash() const {
  const std::string dump = descriptor().dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

}  // namespace circdist
