#include "rcdim/scale_function.hpp"

#include <cmath>

#include "rcdim/errors.hpp"

namespace rcdim {

namespace {
constexpr double kLog2 = 0.69314718055994530942;
}

ScaleFunction ScaleFunction::canonical_pow2() {
  return ScaleFunction(
      Kind::Canonical2PowD, [](double d) { return std::exp2(d); },
      [](double) { return kLog2; }, 0.0, 64.0);
}

ScaleFunction ScaleFunction::erf_gaussian(double eps) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidRadius, "erf_gaussian needs eps > 0");
  const double factor = 0.5 * std::erf(eps) / std::erf(0.5 * eps);
  return ScaleFunction(
      Kind::ErfGaussian, [factor](double d) { return factor * std::exp2(d); },
      [](double) { return kLog2; }, 0.0, 64.0);
}

ScaleFunction ScaleFunction::custom(std::function<double(double)> evaluate,
                                    std::function<double(double)> log_derivative,
                                    double d_min, double d_max) {
  if (!(d_min < d_max))
    fail(ErrorCode::InvalidParameter, "need d_min < d_max");
  return ScaleFunction(Kind::Custom, std::move(evaluate),
                       std::move(log_derivative), d_min, d_max);
}

std::string ScaleFunction::name() const {
  switch (kind_) {
    case Kind::Canonical2PowD: return "2^d";
    case Kind::ErfGaussian: return "erf-gaussian";
    case Kind::Custom: return "custom";
  }
  return "?";
}

void ScaleFunction::validate(int samples) const {
  double prev = evaluate_(d_min_);
  for (int i = 1; i <= samples; ++i) {
    const double d =
        d_min_ + (d_max_ - d_min_) * static_cast<double>(i) / samples;
    const double v = evaluate_(d);
    if (!(v > prev))
      fail(ErrorCode::NonMonotone,
           "scale function is not strictly increasing on its domain");
    prev = v;
  }
}

}  // namespace rcdim
