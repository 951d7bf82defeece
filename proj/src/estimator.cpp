#include "rcdim/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rcdim/errors.hpp"
#include "rcdim/rng.hpp"

namespace rcdim {
namespace {

constexpr double kLog2 = 0.69314718055994530942;
constexpr std::uint64_t kBlockRowStream = 0xb10c0000u;

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

void check_pair(const ConnectionProbEstimate& a,
                const ConnectionProbEstimate& b) {
  if (a.n != b.n || a.m != b.m)
    fail(ErrorCode::InvalidParameter,
         "probability estimates disagree on n or m");
  // Radii may be opaque labels (NaN) when degrees come from edge lists.
  if (std::isfinite(a.radius) && std::isfinite(b.radius) &&
      b.radius != 2.0 * a.radius)
    fail(ErrorCode::RadiusMismatch, "radii are not in exact 1:2 ratio");
  if (a.value == 0.0 || b.value == 0.0)
    fail(ErrorCode::DegenerateGraph,
         "connection probability estimate is zero");
}

}  // namespace

const char* correction_name(Correction c) {
  switch (c) {
    case Correction::None: return "none";
    case Correction::Multiplicative: return "mult";
    case Correction::ErfGaussian: return "erf";
    case Correction::PlusTwoSigma: return "2sigma";
  }
  return "?";
}

std::optional<Correction> correction_from_name(const std::string& name) {
  if (name == "none") return Correction::None;
  if (name == "mult") return Correction::Multiplicative;
  if (name == "erf") return Correction::ErfGaussian;
  if (name == "2sigma") return Correction::PlusTwoSigma;
  return std::nullopt;
}

std::size_t default_rows_per_block(std::size_t n) {
  const double m = std::ceil(std::max(1.0, std::log(static_cast<double>(n))));
  return static_cast<std::size_t>(m);
}

ConnectionProbEstimate estimate_p1(const DegreeProfile& profile) {
  if (profile.n < 2)
    fail(ErrorCode::DegenerateCloud, "profile needs n >= 2");
  if (profile.degrees.empty())
    fail(ErrorCode::InvalidParameter, "profile has no sampled rows");
  std::uint64_t raw = 0;
  for (const auto d : profile.degrees) raw += d;
  ConnectionProbEstimate out;
  out.raw_count = raw;
  out.radius = profile.radius;
  out.m = profile.degrees.size();
  out.n = profile.n;
  out.value = static_cast<double>(raw) /
              (static_cast<double>(out.m) * static_cast<double>(out.n - 1));
  return out;
}

double explicit_dimension(const ConnectionProbEstimate& at_eps,
                          const ConnectionProbEstimate& at_2eps,
                          bool* saturated) {
  check_pair(at_eps, at_2eps);
  if (saturated) *saturated = (at_eps.value == 1.0 && at_2eps.value == 1.0);
  return (std::log(at_2eps.value) - std::log(at_eps.value)) / kLog2;
}

double implicit_dimension(const ConnectionProbEstimate& at_eps,
                          const ConnectionProbEstimate& at_2eps,
                          const ScaleFunction& g, double tol,
                          bool* saturated) {
  check_pair(at_eps, at_2eps);
  if (saturated) *saturated = (at_eps.value == 1.0 && at_2eps.value == 1.0);
  const double ratio = at_2eps.value / at_eps.value;
  double lo = g.d_min(), hi = g.d_max();
  double glo = g.evaluate(lo), ghi = g.evaluate(hi);
  if (!(glo < ghi))
    fail(ErrorCode::NonMonotone, "scale function not increasing on domain");
  if (ratio < glo || ratio > ghi)
    fail(ErrorCode::OutOfRange,
         "ratio " + std::to_string(ratio) + " outside range of g");
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::fabs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g.evaluate(mid) < ratio)
      lo = mid;
    else
      hi = mid;
  }
  const double d = 0.5 * (lo + hi);
  if (!(std::fabs(g.evaluate(d) - ratio) <= tol * ratio))
    fail(ErrorCode::NonMonotone,
         "bisection failed to meet tolerance; g may not be monotone");
  return d;
}

double multiplicative_correction(double d_hat, double epsilon) {
  return d_hat * (1.0 + 2.0 * epsilon / kLog2);
}

double erf_correction(double epsilon) {
  if (!(epsilon > 0.0))
    fail(ErrorCode::InvalidRadius, "erf correction needs eps > 0");
  return (std::log(std::erf(0.5 * epsilon)) -
          std::log(0.5 * std::erf(epsilon))) /
         kLog2;
}

double plus_two_sigma(double d_hat, double sigma_hat) {
  return d_hat + 2.0 * sigma_hat;
}

double sigma_hat(std::span<const double> block_values) {
  const std::size_t t = block_values.size();
  if (t < 2)
    fail(ErrorCode::InsufficientBlocks,
         "variance estimation needs at least 2 blocks");
  const double mean = mean_of(block_values);
  double ss = 0.0;
  for (const double v : block_values) {
    const double d = v - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(t - 1));
}

DimensionEstimate estimate_dimension_from_degrees(std::size_t n,
                                                  double epsilon_label,
                                                  const EstimatorConfig& config,
                                                  const DegreePairFn& degrees) {
  if (n < 2) fail(ErrorCode::DegenerateCloud, "need at least 2 vertices");
  const std::size_t m = config.m > 0 ? config.m : default_rows_per_block(n);
  const std::size_t t = std::max<std::size_t>(1, config.blocks);
  const bool independent = config.row_mode == RowMode::IndependentPerRadius;
  const std::size_t rows_needed = (independent ? 2 : 1) * t * m;
  if (rows_needed > n)
    fail(ErrorCode::InsufficientVertices,
         "blocks * rows (" + std::to_string(rows_needed) + ") exceed n=" +
             std::to_string(n));

  Rng rng(config.seed, kBlockRowStream);
  const std::vector<std::uint32_t> all_rows =
      sample_without_replacement(n, rows_needed, rng);

  const ScaleFunction g =
      config.scale ? *config.scale : ScaleFunction::canonical_pow2();
  const bool closed_form = g.kind() != ScaleFunction::Kind::Custom;
  const double erf_shift = g.kind() == ScaleFunction::Kind::ErfGaussian
                               ? -std::log2(g.evaluate(0.0))
                               : 0.0;

  DimensionEstimate out;
  out.correction = config.correction;
  out.epsilon = epsilon_label;
  out.m = m;
  out.n = n;

  std::vector<double> uncorrected;
  std::vector<double> corrected;
  uncorrected.reserve(t);
  corrected.reserve(t);
  double p_small_sum = 0.0, p_big_sum = 0.0;

  const double corr_eps = config.correction_epsilon.value_or(epsilon_label);
  if ((config.correction == Correction::Multiplicative ||
       config.correction == Correction::ErfGaussian) &&
      !std::isfinite(corr_eps))
    fail(ErrorCode::InvalidParameter,
         "epsilon-based correction requires a known epsilon");

  for (std::size_t b = 0; b < t; ++b) {
    std::span<const std::uint32_t> rows_small(all_rows.data() + b * m, m);
    std::span<const std::uint32_t> rows_big = rows_small;
    if (independent)
      rows_big = {all_rows.data() + (t + b) * m, m};

    auto [deg_small_a, deg_big_a] = degrees(rows_small);
    std::vector<std::uint32_t> deg_small = std::move(deg_small_a);
    std::vector<std::uint32_t> deg_big;
    if (independent) {
      auto [unused, deg_big_b] = degrees(rows_big);
      deg_big = std::move(deg_big_b);
    } else {
      deg_big = std::move(deg_big_a);
    }

    DegreeProfile prof_small{epsilon_label, n,
                             {rows_small.begin(), rows_small.end()},
                             std::move(deg_small)};
    DegreeProfile prof_big{2.0 * epsilon_label, n,
                           {rows_big.begin(), rows_big.end()},
                           std::move(deg_big)};
    const ConnectionProbEstimate p_small = estimate_p1(prof_small);
    const ConnectionProbEstimate p_big = estimate_p1(prof_big);

    if (p_small.value == 0.0 || p_big.value == 0.0) {
      ++out.dropped_blocks;
      continue;
    }
    if (p_small.value == 1.0 && p_big.value == 1.0) out.saturated = true;
    p_small_sum += p_small.value;
    p_big_sum += p_big.value;

    double d;
    if (closed_form) {
      d = (std::log(p_big.value) - std::log(p_small.value)) / kLog2 +
          erf_shift;
    } else {
      d = implicit_dimension(p_small, p_big, g, config.bisection_tol);
    }
    uncorrected.push_back(d);
    switch (config.correction) {
      case Correction::None:
      case Correction::PlusTwoSigma:
        corrected.push_back(d);
        break;
      case Correction::Multiplicative:
        corrected.push_back(multiplicative_correction(d, corr_eps));
        break;
      case Correction::ErfGaussian:
        corrected.push_back(d + erf_correction(corr_eps));
        break;
    }
  }

  if (out.dropped_blocks * 2 > t)
    fail(ErrorCode::DegenerateGraph,
         std::to_string(out.dropped_blocks) + " of " + std::to_string(t) +
             " blocks degenerate (empty graph on the sampled rows)");

  out.t = uncorrected.size();
  out.block_values = uncorrected;
  out.d_hat = mean_of(uncorrected);
  out.mean_p_eps = p_small_sum / static_cast<double>(out.t);
  out.mean_p_2eps = p_big_sum / static_cast<double>(out.t);
  out.sigma_hat = out.t >= 2 ? sigma_hat(corrected) : 0.0;
  if (config.correction == Correction::PlusTwoSigma)
    out.d_corrected = plus_two_sigma(out.d_hat, out.sigma_hat);
  else
    out.d_corrected = mean_of(corrected);
  if (config.round_to_integer)
    out.rounded = static_cast<int>(std::llround(out.d_corrected));
  return out;
}

DimensionEstimate estimate_dimension(const PointCloud& cloud,
                                     MetricSpec metric,
                                     const EstimatorConfig& config) {
  cloud.validate();
  const std::size_t n = cloud.size();
  const double eps =
      config.epsilon > 0.0 ? config.epsilon : default_epsilon(cloud);
  auto degree_fn = [&](std::span<const std::uint32_t> rows) {
    auto [small, big] =
        compute_degree_pair(cloud, metric, eps, rows, config.threads);
    return std::make_pair(std::move(small.degrees), std::move(big.degrees));
  };
  return estimate_dimension_from_degrees(n, eps, config, degree_fn);
}

}  // namespace rcdim
