#include "rcdim/distributions.hpp"

#include <cmath>

#include "rcdim/errors.hpp"

namespace rcdim {
namespace {

// Uniform on [0,1] scaled to sd 1.
constexpr double kCubeSide = 3.4641016151377543864;  // sqrt(12)
// Beta(2,5) has sd sqrt(5)/14; scale by the reciprocal.
constexpr double kBetaScale = 6.2609903369994109468;  // 14/sqrt(5)
constexpr double kPi = 3.14159265358979323846;

void check_dim(int d) {
  if (d < 1) fail(ErrorCode::InvalidParameter, "dimension must be >= 1");
}

}  // namespace

DistributionSpec DistributionSpec::uniform_cube(int d) {
  check_dim(d);
  return DistributionSpec(Kind::UniformCube, d);
}
DistributionSpec DistributionSpec::gaussian(int d) {
  check_dim(d);
  return DistributionSpec(Kind::Gaussian, d);
}
DistributionSpec DistributionSpec::exponential(int d) {
  check_dim(d);
  return DistributionSpec(Kind::Exponential, d);
}
DistributionSpec DistributionSpec::beta25(int d) {
  check_dim(d);
  return DistributionSpec(Kind::Beta25, d);
}
DistributionSpec DistributionSpec::cauchy(int d) {
  check_dim(d);
  return DistributionSpec(Kind::Cauchy, d);
}
DistributionSpec DistributionSpec::uniform_segment() {
  return DistributionSpec(Kind::UniformSegment, 1);
}

DistributionSpec DistributionSpec::custom(
    int d, std::function<void(Rng&, std::span<double>)> sampler,
    std::function<double(std::span<const double>)> density) {
  check_dim(d);
  DistributionSpec spec(Kind::Custom, d);
  spec.sampler_ = std::move(sampler);
  spec.density_ = std::move(density);
  return spec;
}

DistributionSpec DistributionSpec::from_name(const std::string& name, int d) {
  if (name == "uniform" || name == "cube") return uniform_cube(d);
  if (name == "gaussian" || name == "normal") return gaussian(d);
  if (name == "exponential") return exponential(d);
  if (name == "beta25" || name == "beta") return beta25(d);
  if (name == "cauchy") return cauchy(d);
  if (name == "segment") return uniform_segment();
  fail(ErrorCode::UsageError, "unknown distribution '" + name + "'");
}

std::string DistributionSpec::name() const {
  switch (kind_) {
    case Kind::UniformCube: return "uniform";
    case Kind::Gaussian: return "gaussian";
    case Kind::Exponential: return "exponential";
    case Kind::Beta25: return "beta25";
    case Kind::Cauchy: return "cauchy";
    case Kind::UniformSegment: return "segment";
    case Kind::Custom: return "custom";
  }
  return "?";
}

void DistributionSpec::sample(Rng& rng, std::span<double> out) const {
  switch (kind_) {
    case Kind::UniformCube:
      for (auto& x : out) x = kCubeSide * rng.uniform();
      return;
    case Kind::Gaussian:
      for (auto& x : out) x = rng.normal();
      return;
    case Kind::Exponential:
      for (auto& x : out) x = rng.exponential();
      return;
    case Kind::Beta25:
      for (auto& x : out) x = kBetaScale * rng.beta_2_5();
      return;
    case Kind::Cauchy:
      for (auto& x : out) x = rng.cauchy();
      return;
    case Kind::UniformSegment:
      out[0] = rng.uniform();
      return;
    case Kind::Custom:
      sampler_(rng, out);
      return;
  }
}

bool DistributionSpec::has_density() const {
  return kind_ != Kind::Custom || static_cast<bool>(density_);
}

double DistributionSpec::density(std::span<const double> x) const {
  double f = 1.0;
  switch (kind_) {
    case Kind::UniformCube:
      for (const double c : x) {
        if (c < 0.0 || c > kCubeSide) return 0.0;
      }
      return std::pow(kCubeSide, -static_cast<double>(dim_));
    case Kind::Gaussian: {
      double q = 0.0;
      for (const double c : x) q += c * c;
      return std::exp(-0.5 * q) *
             std::pow(2.0 * kPi, -0.5 * static_cast<double>(dim_));
    }
    case Kind::Exponential:
      for (const double c : x) {
        if (c < 0.0) return 0.0;
        f *= std::exp(-c);
      }
      return f;
    case Kind::Beta25:
      for (const double c : x) {
        const double b = c / kBetaScale;
        if (b < 0.0 || b > 1.0) return 0.0;
        const double u = 1.0 - b;
        const double u2 = u * u;
        f *= 30.0 * b * u2 * u2 / kBetaScale;
      }
      return f;
    case Kind::Cauchy:
      for (const double c : x) f *= 1.0 / (kPi * (1.0 + c * c));
      return f;
    case Kind::UniformSegment:
      return (x[0] < 0.0 || x[0] > 1.0) ? 0.0 : 1.0;
    case Kind::Custom:
      if (!density_)
        fail(ErrorCode::InvalidParameter, "custom law has no density hook");
      return density_(x);
  }
  return f;
}

}  // namespace rcdim
