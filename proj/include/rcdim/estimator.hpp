#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rcdim/geometry.hpp"
#include "rcdim/point_cloud.hpp"
#include "rcdim/scale_function.hpp"

namespace rcdim {

enum class Correction { None, Multiplicative, ErfGaussian, PlusTwoSigma };

const char* correction_name(Correction c);
std::optional<Correction> correction_from_name(const std::string& name);

/// Whether the rows feeding the two radii are identical (nested counts,
/// block estimates always >= 0) or drawn independently per radius.
enum class RowMode { Shared, IndependentPerRadius };

struct EstimatorConfig {
  std::size_t m = 0;       // rows per block; 0 -> ceil(max(1, log n))
  std::size_t blocks = 10; // disjoint blocks
  double epsilon = 0.0;    // <= 0 -> default_epsilon(cloud)
  Correction correction = Correction::None;
  std::optional<ScaleFunction> scale;  // unset -> canonical 2^d
  std::uint64_t seed = 0;
  bool round_to_integer = false;
  RowMode row_mode = RowMode::Shared;
  double bisection_tol = 1e-9;
  int threads = 0;
  /// Epsilon handed to the multiplicative correction; defaults to the
  /// estimation epsilon.
  std::optional<double> correction_epsilon;
};

struct ConnectionProbEstimate {
  double value = 0.0;
  double radius = 0.0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::uint64_t raw_count = 0;
};

struct DimensionEstimate {
  double d_hat = 0.0;        // mean of uncorrected block values
  double d_corrected = 0.0;  // mean of corrected block values
  Correction correction = Correction::None;
  std::vector<double> block_values;  // uncorrected, surviving blocks
  double sigma_hat = 0.0;
  double epsilon = 0.0;
  std::size_t m = 0;
  std::size_t t = 0;  // surviving blocks
  std::size_t n = 0;
  std::optional<int> rounded;
  std::size_t dropped_blocks = 0;
  bool saturated = false;  // some block saw complete graphs at both radii
  double mean_p_eps = 0.0;   // block-mean connection probability estimates
  double mean_p_2eps = 0.0;
};

/// p_hat = (sum of degrees) / (m (n-1)).
ConnectionProbEstimate estimate_p1(const DegreeProfile& profile);

/// (log p_hat_2eps - log p_hat_eps) / log 2. Radii must be in exact 1:2
/// ratio and both estimates strictly positive; *saturated flags the
/// uninformative both-complete case (value 0).
double explicit_dimension(const ConnectionProbEstimate& at_eps,
                          const ConnectionProbEstimate& at_2eps,
                          bool* saturated = nullptr);

/// Solves g(d) = p_hat_2eps / p_hat_eps by bisection on [d_min, d_max];
/// the returned d satisfies |g(d) - ratio| <= tol * ratio.
double implicit_dimension(const ConnectionProbEstimate& at_eps,
                          const ConnectionProbEstimate& at_2eps,
                          const ScaleFunction& g, double tol = 1e-9,
                          bool* saturated = nullptr);

/// d * (1 + 2 eps / log 2).
double multiplicative_correction(double d_hat, double epsilon);

/// The eps-only additive constant (log erf(eps/2) - log(erf(eps)/2)) / log 2;
/// positive for every eps > 0 and -> 0 as eps -> 0.
double erf_correction(double epsilon);

double plus_two_sigma(double d_hat, double sigma_hat);

/// Sample standard deviation (divisor t-1) over block estimates; t >= 2.
double sigma_hat(std::span<const double> block_values);

/// Degrees for the requested rows at the two radii; implementations exist
/// for point clouds and for externally supplied edge lists.
using DegreePairFn = std::function<std::pair<std::vector<std::uint32_t>,
                                             std::vector<std::uint32_t>>(
    std::span<const std::uint32_t> rows)>;

DimensionEstimate estimate_dimension(const PointCloud& cloud,
                                     MetricSpec metric,
                                     const EstimatorConfig& config);

/// Core block pipeline over an abstract degree source with vertex count n.
/// epsilon_label is recorded in the result (NaN when unknown, e.g. edge
/// lists).
DimensionEstimate estimate_dimension_from_degrees(std::size_t n,
                                                  double epsilon_label,
                                                  const EstimatorConfig& config,
                                                  const DegreePairFn& degrees);

std::size_t default_rows_per_block(std::size_t n);

}  // namespace rcdim
