#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rcdim/distributions.hpp"
#include "rcdim/scale_function.hpp"

namespace rcdim {

/// Volume of a d-dimensional Euclidean ball of radius eps.
double ball_volume(int d, double eps);

/// P{ ||X - Y|| <= eps } for X, Y iid N_d(0, I): the chi-squared tail
/// P(chi^2_d <= eps^2 / 2), exact for every d.
double gaussian_p1_exact(int d, double eps);

/// The erf-based closed form (4 pi)^{-d/2} v_eps (sqrt(pi)/eps) erf(eps/2).
/// Coincides with gaussian_p1_exact at d = 1; for d >= 2 it drops the
/// radial Jacobian and is only a small-eps approximation. Its scale ratio
/// p_{2eps}/p_eps = 2^d (erf(eps)/2)/erf(eps/2) is what the erf-based scale
/// function and correction use.
double gaussian_p1_erf_form(int d, double eps);

struct ProbEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct PopulationProbs {
  double eps = 0.0;
  std::uint64_t samples = 0;
  ProbEstimate p1_eps;    // P{ r(X,Y) <= eps }
  ProbEstimate p1_2eps;   // P{ r(X,Y) <= 2 eps }
  ProbEstimate p2_eps;    // P{ r(X,Z) <= eps, r(Y,Z) <= eps }
  ProbEstimate p2_2eps;   // same at 2 eps
  ProbEstimate p_cross;   // P{ r(X,Z) <= eps, r(Y,Z) <= 2 eps }
};

/// Plain Monte Carlo over independent pairs/triples with the indicator
/// products; deterministic per seed, chunked so results do not depend on
/// the worker count. samples >= 1e4.
PopulationProbs mc_probs(const DistributionSpec& dist, double eps,
                         std::uint64_t samples, std::uint64_t seed,
                         int threads = 0);

/// Gaussian-only conditional Monte Carlo: conditions on the third point's
/// squared radius (chi^2_d) and integrates the two indicators exactly via
/// the noncentral chi-squared CDF. Orders of magnitude less variance than
/// indicators; usable far into the joint (d, eps) tail.
PopulationProbs mc_probs_gaussian_radial(int d, double eps,
                                         std::uint64_t samples,
                                         std::uint64_t seed, int threads = 0);

/// Importance-sampled pair probability P{ r(X,Y) <= eps } for any law with
/// a density hook: Y is drawn uniformly in the eps-ball around X and the
/// indicator is replaced by v_eps * f(Y). Relative error stays O(1/sqrt(N))
/// even when the probability itself underflows indicator sampling.
ProbEstimate mc_p1_ball_is(const DistributionSpec& dist, double eps,
                           std::uint64_t samples, std::uint64_t seed,
                           int threads = 0);

/// Relative-variance constant of the p1 estimator over m rows:
/// (p2 - p1^2) / (m p1^2).
double p1_variance_constant(const PopulationProbs& probs, std::size_t m);

/// The m/n-dependent variance bracket; at m/n -> 0 it reduces to V_eps.
double variance_bracket(const PopulationProbs& probs, std::size_t m,
                        std::size_t n);

/// {d log g / dd}^{-2} * bracket / m: the asymptotic variance of the
/// implicit estimator at dimension d.
double estimator_variance(const PopulationProbs& probs, const ScaleFunction& g,
                         double d, std::size_t m, std::size_t n);

struct CurvePoint {
  int d = 0;
  double value = 0.0;
  double std_error = 0.0;
  bool degenerate = false;  // value is a -inf sentinel
};

/// (log p_{2eps,1} - log p_{eps,1}) / log 2 per dimension; the Fig. 3
/// curves. Uses ball importance sampling (needs a density).
std::vector<CurvePoint> doubling_curve(DistributionSpec::Kind kind,
                                       std::span<const int> d_range,
                                       double eps, std::uint64_t samples,
                                       std::uint64_t seed, int threads = 0);

struct ScalingPoint {
  int d = 0;
  double log_variance = 0.0;  // log of bracket / log(2)^2
  double log_bracket = 0.0;
  double std_error = 0.0;
  bool degenerate = false;
};

/// log of the asymptotic variance constant per dimension; the Fig. 2
/// curves (m/n -> 0 bracket). Gaussian runs through the radial sampler;
/// other kinds fall back to indicator Monte Carlo.
std::vector<ScalingPoint> scaling_curve(DistributionSpec::Kind kind,
                                        std::span<const int> d_range,
                                        double eps, std::uint64_t samples,
                                        std::uint64_t seed, int threads = 0);

/// Assembles one scaling point from already-computed probabilities
/// (nonpositive brackets become flagged -inf sentinels, never NaN).
ScalingPoint scaling_point_from_probs(int d, const PopulationProbs& probs);

}  // namespace rcdim
