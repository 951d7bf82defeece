#pragma once

#include <functional>
#include <span>
#include <string>

#include "rcdim/rng.hpp"

namespace rcdim {

/// Sampleable design-point laws for the theory engine. The continuous
/// families with finite variance are standardized to coordinate sd 1
/// (Cauchy keeps scale 1; UniformSegment is the raw [0,1] law used by
/// closed-form tests).
class DistributionSpec {
 public:
  enum class Kind {
    UniformCube,
    Gaussian,
    Exponential,
    Beta25,
    Cauchy,
    UniformSegment,
    Custom,
  };

  static DistributionSpec uniform_cube(int d);
  static DistributionSpec gaussian(int d);
  static DistributionSpec exponential(int d);
  static DistributionSpec beta25(int d);
  static DistributionSpec cauchy(int d);
  static DistributionSpec uniform_segment();
  static DistributionSpec custom(
      int d, std::function<void(Rng&, std::span<double>)> sampler,
      std::function<double(std::span<const double>)> density = {});

  /// Parses e.g. "gaussian", "uniform", "exponential", "beta25", "cauchy",
  /// "segment".
  static DistributionSpec from_name(const std::string& name, int d);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::string name() const;

  void sample(Rng& rng, std::span<double> out) const;

  bool has_density() const;
  /// Joint density at a point (product over coordinates).
  double density(std::span<const double> x) const;

 private:
  DistributionSpec(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  int dim_;
  std::function<void(Rng&, std::span<double>)> sampler_;
  std::function<double(std::span<const double>)> density_;
};

}  // namespace rcdim
