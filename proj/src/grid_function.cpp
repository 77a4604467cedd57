#include "circdist/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "circdist/quadrature.hpp"

namespace circdist {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

GridFunction::GridFunction(std::vector<double> values, Interp interp)
    : values_(std::move(values)), interp_(interp) {
  if (values_.size() < 2 || !power_of_two(values_.size() - 1))
    throw std::invalid_argument("GridFunction: sample count must be a power of two");
  if (interp_ == Interp::MonotoneCubic) build_slopes();
}

GridFunction::GridFunction(std::vector<double> values, std::vector<double> slopes)
    : values_(std::move(values)),
      slopes_(std::move(slopes)),
      interp_(Interp::MonotoneCubic) {
  if (values_.size() < 2 || !power_of_two(values_.size() - 1))
    throw std::invalid_argument("GridFunction: sample count must be a power of two");
  if (slopes_.size() != values_.size())
    throw std::invalid_argument("GridFunction: slope table size mismatch");
}

GridFunction GridFunction::sample(const std::function<double(double)>& f,
                                  std::size_t n_samples, Interp interp) {
  std::vector<double> v(n_samples + 1);
  for (std::size_t i = 0; i <= n_samples; ++i)
    v[i] = f(static_cast<double>(i) / static_cast<double>(n_samples));
  return GridFunction(std::move(v), interp);
}

GridFunction GridFunction::antiderivative(const std::function<double(double)>& f,
                                          std::size_t n_samples, double offset) {
  std::vector<double> v = cumulative_simpson(f, 0.0, 1.0, n_samples);
  for (double& x : v) x += offset;
  // Exact slopes for the antiderivative are the integrand values.
  std::vector<double> s(n_samples + 1);
  for (std::size_t i = 0; i <= n_samples; ++i)
    s[i] = f(static_cast<double>(i) / static_cast<double>(n_samples));
  return GridFunction(std::move(v), std::move(s));
}

void GridFunction::build_slopes() {
  // Fritsch-Butland slope limiting on uniform spacing.
  const std::size_t n = n_samples();
  const double h = 1.0 / static_cast<double>(n);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = (values_[i + 1] - values_[i]) / h;
  slopes_.assign(n + 1, 0.0);
  slopes_[0] = d[0];
  slopes_[n] = d[n - 1];
  for (std::size_t i = 1; i < n; ++i) {
    const double prod = d[i - 1] * d[i];
    if (prod > 0.0) {
      slopes_[i] = 3.0 * prod / (std::max(d[i - 1], d[i]) + 2.0 * std::min(d[i - 1], d[i]));
      if (d[i] < 0.0)  // both negative; the harmonic form above assumed positive
        slopes_[i] = 3.0 * prod / (std::min(d[i - 1], d[i]) + 2.0 * std::max(d[i - 1], d[i]));
    } else {
      slopes_[i] = 0.0;
    }
  }
}

double GridFunction::operator()(double x) const {
  const std::size_t n = n_samples();
  const double scaled = x * static_cast<double>(n);
  if (scaled <= 0.0) return values_.front();
  if (scaled >= static_cast<double>(n)) return values_.back();
  std::size_t k = static_cast<std::size_t>(scaled);
  double t = scaled - static_cast<double>(k);
  if (t == 0.0) return values_[k];  // grid nodes are exact
  const double h = 1.0 / static_cast<double>(n);
  const double y0 = values_[k], y1 = values_[k + 1];
  if (interp_ == Interp::Linear) return y0 + t * (y1 - y0);
  const double m0 = slopes_[k] * h, m1 = slopes_[k + 1] * h;
  const double t2 = t * t, t3 = t2 * t;
  return (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * m0 +
         (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * m1;
}

double GridFunction::derivative(double x) const {
  const std::size_t n = n_samples();
  const double h = 1.0 / static_cast<double>(n);
  double scaled = x * static_cast<double>(n);
  if (scaled < 0.0) scaled = 0.0;
  if (scaled > static_cast<double>(n)) scaled = static_cast<double>(n);
  std::size_t k = static_cast<std::size_t>(scaled);
  if (k >= n) k = n - 1;
  const double t = scaled - static_cast<double>(k);
  const double y0 = values_[k], y1 = values_[k + 1];
  if (interp_ == Interp::Linear) return (y1 - y0) / h;
  const double m0 = slopes_[k] * h, m1 = slopes_[k + 1] * h;
  const double t2 = t * t;
  const double dy = (6.0 * t2 - 6.0 * t) * y0 + (3.0 * t2 - 4.0 * t + 1.0) * m0 +
                    (-6.0 * t2 + 6.0 * t) * y1 + (3.0 * t2 - 2.0 * t) * m1;
  return dy / h;
}

double GridFunction::integral() const {
  const std::size_t n = n_samples();
  const double h = 1.0 / static_cast<double>(n);
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n; i += 2) odd += values_[i];
  for (std::size_t i = 2; i < n; i += 2) even += values_[i];
  return (h / 3.0) * (values_.front() + values_.back() + 4.0 * odd + 2.0 * even);
}

double GridFunction::integral_abs() const {
  const std::size_t n = n_samples();
  const double h = 1.0 / static_cast<double>(n);
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n; i += 2) odd += std::abs(values_[i]);
  for (std::size_t i = 2; i < n; i += 2) even += std::abs(values_[i]);
  return (h / 3.0) *
         (std::abs(values_.front()) + std::abs(values_.back()) + 4.0 * odd + 2.0 * even);
}

}  // namespace circdist
