#pragma once

#include <memory>
#include <optional>
#include <string>

#include "circdist/grid_function.hpp"

#include "json.hpp"

namespace circdist {

enum class Domain { Circle, Interval };
enum class Smoothness { C1, C1AC, C2, Analytic };

Smoothness min_smoothness(Smoothness a, Smoothness b);
std::string to_string(Domain d);
std::string to_string(Smoothness s);

/// Distance between two circle points given by lift values: min_k |a - b - k|.
double circle_distance(double a, double b);

class MapNode;

struct Theorem3Params {
  double K = 0.0;
  long m = 0;
  double a_m = 0.0;       // first interior zero of f''
  double b_m = 0.0;       // = 1 - a_m
  double log_int_psi_m = 0.0;  // log of int_0^1 psi^m
  double log_c_m = 0.0;   // log of the normaliser c_m
  double c_m = 0.0;       // may underflow to 0 for very large m
};

struct MobiusCoeffs {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
};

/// Orientation-preserving diffeomorphism of the circle (as a lift R -> R with
/// F(x+1) = F(x)+1) or of the interval [0,1]. Immutable; evaluators are pure
/// and safe to call concurrently. Maps are descriptor trees over a small set
/// of primitive nodes; composite nodes evaluate lazily (iterates run orbit
/// loops rather than materialising composition trees).
class DiffeoMap {
 public:
  DiffeoMap();  // circle identity

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  /// Dispatch on order 0/1/2. Order 2 on a C1-only map throws OrderUnsupported.
  double evaluate(double x, int order) const;

  Domain domain() const;
  Smoothness smoothness() const;

  static DiffeoMap identity(Domain d);
  static DiffeoMap rotation(double theta);
  /// Moebius map (a r + b)/(c r + d) transported to the circle via r = tan(pi x).
  static DiffeoMap mobius(double a, double b, double c, double d);
  /// Map with prescribed nonlinearity H = f''/f' (tables built on construction).
  static DiffeoMap from_nonlinearity(const GridFunction& H, Domain d);
  static DiffeoMap from_nonlinearity_fn(const std::function<double(double)>& H,
                                        std::size_t n_samples, Domain d);
  /// Circle map with f'' = K*psi - c_m*psi^m, psi(x) = 1 - cos(2 pi x).
  static DiffeoMap theorem3(double K, long m,
                            std::size_t n_samples = defaults::kTableSamples);
  /// Convex interpolation t*id + (1-t)*f on lifts.
  static DiffeoMap blend(double t, const DiffeoMap& f);
  /// Same map with a downgraded smoothness tag (for order-capability tests).
  DiffeoMap with_smoothness(Smoothness s) const;

  nlohmann::json descriptor() const;
  static DiffeoMap parse(const nlohmann::json& j);
  static DiffeoMap parse(const std::string& json_text);
  std::string descriptor_hash() const;

  const MapNode& node() const { return *node_; }
  std::shared_ptr<const MapNode> node_ptr() const { return node_; }
  explicit DiffeoMap(std::shared_ptr<const MapNode> node);

 private:
  std::shared_ptr<const MapNode> node_;
};

/// Pointwise composition f o g. Throws DomainMismatch on different domains.
DiffeoMap compose(const DiffeoMap& f, const DiffeoMap& g);
/// Inverse map; evaluation solves the monotone lift equation per point.
DiffeoMap invert(const DiffeoMap& f);
/// n-th compositional iterate; lazy, evaluated by orbit loops. n may be negative.
DiffeoMap iterate(const DiffeoMap& f, long n);

inline double evaluate(const DiffeoMap& f, double x, int order) {
  return f.evaluate(x, order);
}

/// log (f^n)'(x) = sum_{k=0}^{n-1} log f'(f^k x). Supports n >= 0; negative n
/// uses the backward orbit.
double log_deriv_iterate(const DiffeoMap& f, long n, double x);

/// (f^n)''/(f^n)'(x) = sum_{k=0}^{n-1} (f''/f')(f^k x) * (f^k)'(x).
double nonlinearity_iterate(const DiffeoMap& f, long n, double x);

/// f''/f' at x.
double nonlinearity(const DiffeoMap& f, double x);

/// Theorem-3 construction constants when the map is such a node, else null.
const Theorem3Params* theorem3_params(const DiffeoMap& f);
/// Raw Moebius coefficients when the map is such a node, else null.
const MobiusCoeffs* mobius_coeffs(const DiffeoMap& f);

}  // namespace circdist
