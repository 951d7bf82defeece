#pragma once

#include <functional>
#include <string>

namespace rcdim {

/// g_eps(d): the model for the connection-probability ratio
/// p_{2eps,1}/p_{eps,1} as a function of intrinsic dimension, together
/// with d log g / dd. Must be strictly increasing on [d_min, d_max].
class ScaleFunction {
 public:
  enum class Kind { Canonical2PowD, ErfGaussian, Custom };

  /// The doubling choice g(d) = 2^d.
  static ScaleFunction canonical_pow2();

  /// g(d) = 2^d * (erf(eps)/2) / erf(eps/2): the erf-based ratio model
  /// for Gaussian design points.
  static ScaleFunction erf_gaussian(double eps);

  static ScaleFunction custom(std::function<double(double)> evaluate,
                              std::function<double(double)> log_derivative,
                              double d_min = 0.0, double d_max = 64.0);

  double evaluate(double d) const { return evaluate_(d); }
  double log_derivative(double d) const { return log_derivative_(d); }
  double d_min() const { return d_min_; }
  double d_max() const { return d_max_; }
  Kind kind() const { return kind_; }
  std::string name() const;

  /// Samples the domain and throws NonMonotone if g is not strictly
  /// increasing.
  void validate(int samples = 256) const;

 private:
  ScaleFunction(Kind kind, std::function<double(double)> f,
                std::function<double(double)> lder, double lo, double hi)
      : kind_(kind),
        evaluate_(std::move(f)),
        log_derivative_(std::move(lder)),
        d_min_(lo),
        d_max_(hi) {}

  Kind kind_;
  std::function<double(double)> evaluate_;
  std::function<double(double)> log_derivative_;
  double d_min_;
  double d_max_;
};

}  // namespace rcdim
