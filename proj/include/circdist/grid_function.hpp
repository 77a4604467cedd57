#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "circdist/defaults.hpp"

namespace circdist {

enum class Interp { Linear, MonotoneCubic };

/// Uniformly sampled real function on [0,1] with n_samples subintervals
/// (n_samples a power of two) and n_samples+1 stored values. Evaluation at a
/// grid node returns the stored value exactly; between nodes either linear or
/// piecewise-cubic Hermite interpolation is used. For MonotoneCubic the node
/// slopes are Fritsch-Butland limited estimates unless exact slopes are
/// supplied by the builder.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(std::vector<double> values, Interp interp);
  GridFunction(std::vector<double> values, std::vector<double> slopes);

  static GridFunction sample(const std::function<double(double)>& f,
                             std::size_t n_samples, Interp interp);

  /// Antiderivative table of `f`: A(0) = offset, A(x) = offset + int_0^x f.
  static GridFunction antiderivative(const std::function<double(double)>& f,
                                     std::size_t n_samples, double offset = 0.0);

  double operator()(double x) const;
  double derivative(double x) const;

  /// Composite-Simpson integral of the stored samples over [0,1].
  double integral() const;
  /// Same for |values|.
  double integral_abs() const;

  std::size_t n_samples() const { return values_.empty() ? 0 : values_.size() - 1; }
  const std::vector<double>& values() const { return values_; }
  bool has_slopes() const { return !slopes_.empty(); }
  Interp interp() const { return interp_; }

 private:
  void build_slopes();
  std::vector<double> values_;
  std::vector<double> slopes_;  // per-node dy/dx; empty for Linear
  Interp interp_ = Interp::MonotoneCubic;
};

}  // namespace circdist
