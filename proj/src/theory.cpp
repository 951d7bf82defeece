#include "rcdim/theory.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rcdim/errors.hpp"
#include "rcdim/parallel.hpp"
#include "rcdim/special_functions.hpp"

namespace rcdim {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994530942;
constexpr std::uint64_t kPairStream = 0x70a1c000u;
constexpr std::uint64_t kRadialStream = 0x7ad1a100u;
constexpr std::uint64_t kBallStream = 0xba110000u;

void check_samples(std::uint64_t samples) {
  if (samples < 10000)
    fail(ErrorCode::InvalidSampleCount, "need at least 1e4 Monte Carlo samples");
}

ProbEstimate binomial_estimate(std::uint64_t hits, std::uint64_t n) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n))};
}

/// Uniform direction times radius^(1/d): uniform in the unit ball.
void sample_unit_ball(Rng& rng, std::span<double> out) {
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& x : out) {
      x = rng.normal();
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double r =
      std::pow(rng.uniform_open(), 1.0 / static_cast<double>(out.size()));
  const double scale = r / std::sqrt(norm2);
  for (auto& x : out) x *= scale;
}

}  // namespace

double ball_volume(int d, double eps) {
  if (d < 1) fail(ErrorCode::InvalidParameter, "dimension must be >= 1");
  if (!(eps > 0.0)) fail(ErrorCode::InvalidRadius, "radius must be positive");
  return std::pow(eps, d) * std::pow(kPi, 0.5 * d) /
         std::tgamma(0.5 * d + 1.0);
}

double gaussian_p1_exact(int d, double eps) {
  if (d < 1) fail(ErrorCode::InvalidParameter, "dimension must be >= 1");
  if (!(eps > 0.0)) fail(ErrorCode::InvalidRadius, "radius must be positive");
  // X - Y ~ N_d(0, 2I), so ||X - Y||^2 / 2 ~ chi^2_d.
  return chi_squared_cdf(0.5 * eps * eps, d);
}

double gaussian_p1_erf_form(int d, double eps) {
  if (d < 1) fail(ErrorCode::InvalidParameter, "dimension must be >= 1");
  if (!(eps > 0.0)) fail(ErrorCode::InvalidRadius, "radius must be positive");
  return std::pow(4.0 * kPi, -0.5 * d) * ball_volume(d, eps) *
         (std::sqrt(kPi) / eps) * std::erf(0.5 * eps);
}

PopulationProbs mc_probs(const DistributionSpec& dist, double eps,
                         std::uint64_t samples, std::uint64_t seed,
                         int threads) {
  check_samples(samples);
  if (!(eps > 0.0)) fail(ErrorCode::InvalidRadius, "radius must be positive");
  const int d = dist.dim();
  const double e2 = eps * eps;
  const double e2big = 4.0 * eps * eps;

  const std::size_t n_chunks = (samples + kMcChunk - 1) / kMcChunk;
  struct Counts {
    std::uint64_t p1 = 0, p1b = 0, p2 = 0, p2b = 0, pc = 0;
  };
  std::vector<Counts> partial(n_chunks);

  parallel_chunks(n_chunks, threads, [&](std::size_t c) {
    Rng rng(seed, kPairStream + c);
    const std::uint64_t lo = c * kMcChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + kMcChunk, samples);
    std::vector<double> x(d), y(d), z(d);
    Counts& acc = partial[c];
    for (std::uint64_t s = lo; s < hi; ++s) {
      dist.sample(rng, x);
      dist.sample(rng, y);
      dist.sample(rng, z);
      double dxy = 0.0, dxz = 0.0, dyz = 0.0;
      for (int k = 0; k < d; ++k) {
        const double a = x[k] - y[k], b = x[k] - z[k], g = y[k] - z[k];
        dxy += a * a;
        dxz += b * b;
        dyz += g * g;
      }
      if (dxy <= e2) ++acc.p1;
      if (dxy <= e2big) ++acc.p1b;
      if (dxz <= e2 && dyz <= e2) ++acc.p2;
      if (dxz <= e2big && dyz <= e2big) ++acc.p2b;
      if (dxz <= e2 && dyz <= e2big) ++acc.pc;
    }
  });

  Counts total;
  for (const auto& p : partial) {
    total.p1 += p.p1;
    total.p1b += p.p1b;
    total.p2 += p.p2;
    total.p2b += p.p2b;
    total.pc += p.pc;
  }
  PopulationProbs out;
  out.eps = eps;
  out.samples = samples;
  out.p1_eps = binomial_estimate(total.p1, samples);
  out.p1_2eps = binomial_estimate(total.p1b, samples);
  out.p2_eps = binomial_estimate(total.p2, samples);
  out.p2_2eps = binomial_estimate(total.p2b, samples);
  out.p_cross = binomial_estimate(total.pc, samples);
  return out;
}

PopulationProbs mc_probs_gaussian_radial(int d, double eps,
                                         std::uint64_t samples,
                                         std::uint64_t seed, int threads) {
  check_samples(samples);
  if (d < 1) fail(ErrorCode::InvalidParameter, "dimension must be >= 1");
  if (!(eps > 0.0)) fail(ErrorCode::InvalidRadius, "radius must be positive");
  const double e2 = eps * eps;
  const double e2big = 4.0 * eps * eps;

  const std::size_t n_chunks = (samples + kMcChunk - 1) / kMcChunk;
  struct Sums {
    double a = 0, b = 0, aa = 0, bb = 0, ab = 0, a4 = 0, b4 = 0, a2b2 = 0;
  };
  std::vector<Sums> partial(n_chunks);

  parallel_chunks(n_chunks, threads, [&](std::size_t c) {
    Rng rng(seed, kRadialStream + c);
    const std::uint64_t lo = c * kMcChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + kMcChunk, samples);
    Sums& acc = partial[c];
    for (std::uint64_t s = lo; s < hi; ++s) {
      const double lambda = rng.chi_squared(d);
      const double a = noncentral_chi_squared_cdf(e2, d, lambda);
      const double b = noncentral_chi_squared_cdf(e2big, d, lambda);
      acc.a += a;
      acc.b += b;
      acc.aa += a * a;
      acc.bb += b * b;
      acc.ab += a * b;
      acc.a4 += a * a * a * a;
      acc.b4 += b * b * b * b;
      acc.a2b2 += a * a * b * b;
    }
  });

  Sums t;
  for (const auto& p : partial) {
    t.a += p.a;
    t.b += p.b;
    t.aa += p.aa;
    t.bb += p.bb;
    t.ab += p.ab;
    t.a4 += p.a4;
    t.b4 += p.b4;
    t.a2b2 += p.a2b2;
  }
  const double n = static_cast<double>(samples);
  auto moment_estimate = [n](double sum, double sum_sq) {
    const double mean = sum / n;
    const double var = std::max(sum_sq / n - mean * mean, 0.0);
    return ProbEstimate{mean, std::sqrt(var / n)};
  };
  PopulationProbs out;
  out.eps = eps;
  out.samples = samples;
  out.p1_eps = moment_estimate(t.a, t.aa);
  out.p1_2eps = moment_estimate(t.b, t.bb);
  out.p2_eps = moment_estimate(t.aa, t.a4);
  out.p2_2eps = moment_estimate(t.bb, t.b4);
  out.p_cross = moment_estimate(t.ab, t.a2b2);
  return out;
}

ProbEstimate mc_p1_ball_is(const DistributionSpec& dist, double eps,
                           std::uint64_t samples, std::uint64_t seed,
                           int threads) {
  check_samples(samples);
  if (!(eps > 0.0)) fail(ErrorCode::InvalidRadius, "radius must be positive");
  if (!dist.has_density())
    fail(ErrorCode::InvalidParameter,
         "ball importance sampling needs a density");
  const int d = dist.dim();
  const double v_eps = ball_volume(d, eps);

  const std::size_t n_chunks = (samples + kMcChunk - 1) / kMcChunk;
  struct Sums {
    double w = 0, ww = 0;
  };
  std::vector<Sums> partial(n_chunks);
  parallel_chunks(n_chunks, threads, [&](std::size_t c) {
    Rng rng(seed, kBallStream + c);
    const std::uint64_t lo = c * kMcChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + kMcChunk, samples);
    std::vector<double> x(d), u(d), y(d);
    Sums& acc = partial[c];
    for (std::uint64_t s = lo; s < hi; ++s) {
      dist.sample(rng, x);
      sample_unit_ball(rng, u);
      for (int k = 0; k < d; ++k) y[k] = x[k] + eps * u[k];
      const double w = v_eps * dist.density(y);
      acc.w += w;
      acc.ww += w * w;
    }
  });
  Sums t;
  for (const auto& p : partial) {
    t.w += p.w;
    t.ww += p.ww;
  }
  const double n = static_cast<double>(samples);
  const double mean = t.w / n;
  const double var = std::max(t.ww / n - mean * mean, 0.0);
  return {mean, std::sqrt(var / n)};
}

double p1_variance_constant(const PopulationProbs& probs, std::size_t m) {
  const double p1 = probs.p1_eps.value;
  if (p1 <= 0.0)
    fail(ErrorCode::DegenerateProbability, "p1 must be positive");
  if (m == 0) fail(ErrorCode::InvalidParameter, "m must be positive");
  return (probs.p2_eps.value - p1 * p1) /
         (static_cast<double>(m) * p1 * p1);
}

double variance_bracket(const PopulationProbs& probs, std::size_t m,
                        std::size_t n) {
  const double a = probs.p1_eps.value;
  const double b = probs.p1_2eps.value;
  if (a <= 0.0 || b <= 0.0)
    fail(ErrorCode::DegenerateProbability,
         "connection probabilities must be positive");
  const double ratio =
      n == 0 ? 0.0 : static_cast<double>(m) / static_cast<double>(n);
  return 6.0 * ratio +
         (a * a * probs.p2_2eps.value + b * b * probs.p2_eps.value) /
             (a * a * b * b) -
         2.0 * (1.0 + 3.0 * ratio) * probs.p_cross.value / (a * b);
}

double estimator_variance(const PopulationProbs& probs, const ScaleFunction& g,
                         double d, std::size_t m, std::size_t n) {
  if (m == 0) fail(ErrorCode::InvalidParameter, "m must be positive");
  const double slope = g.log_derivative(d);
  if (slope == 0.0)
    fail(ErrorCode::NonMonotone, "scale function has zero slope at d");
  return variance_bracket(probs, m, n) /
         (slope * slope * static_cast<double>(m));
}

std::vector<CurvePoint> doubling_curve(DistributionSpec::Kind kind,
                                       std::span<const int> d_range,
                                       double eps, std::uint64_t samples,
                                       std::uint64_t seed, int threads) {
  check_samples(samples);
  std::vector<CurvePoint> out;
  out.reserve(d_range.size());
  for (const int d : d_range) {
    const DistributionSpec dist = [&] {
      switch (kind) {
        case DistributionSpec::Kind::UniformCube:
          return DistributionSpec::uniform_cube(d);
        case DistributionSpec::Kind::Gaussian:
          return DistributionSpec::gaussian(d);
        case DistributionSpec::Kind::Exponential:
          return DistributionSpec::exponential(d);
        case DistributionSpec::Kind::Beta25:
          return DistributionSpec::beta25(d);
        case DistributionSpec::Kind::Cauchy:
          return DistributionSpec::cauchy(d);
        case DistributionSpec::Kind::UniformSegment:
          if (d != 1)
            fail(ErrorCode::InvalidParameter,
                 "the segment law only exists at d = 1");
          return DistributionSpec::uniform_segment();
        default:
          fail(ErrorCode::InvalidParameter,
               "doubling_curve needs a named distribution family");
      }
    }();

    // Shared (X, U) across the two scales: the weights are positively
    // correlated, which tightens the log-ratio.
    const double v1 = ball_volume(d, eps);
    const double v2 = ball_volume(d, 2.0 * eps);
    const std::size_t n_chunks = (samples + kMcChunk - 1) / kMcChunk;
    struct Sums {
      double w1 = 0, w2 = 0, w11 = 0, w22 = 0, w12 = 0;
    };
    std::vector<Sums> partial(n_chunks);
    parallel_chunks(n_chunks, threads, [&](std::size_t c) {
      Rng rng(seed, kBallStream + 131071 * static_cast<std::uint64_t>(d) + c);
      const std::uint64_t lo = c * kMcChunk;
      const std::uint64_t hi = std::min<std::uint64_t>(lo + kMcChunk, samples);
      std::vector<double> x(d), u(d), y(d);
      Sums& acc = partial[c];
      for (std::uint64_t s = lo; s < hi; ++s) {
        dist.sample(rng, x);
        sample_unit_ball(rng, u);
        for (int k = 0; k < d; ++k) y[k] = x[k] + eps * u[k];
        const double w1 = v1 * dist.density(y);
        for (int k = 0; k < d; ++k) y[k] = x[k] + 2.0 * eps * u[k];
        const double w2 = v2 * dist.density(y);
        acc.w1 += w1;
        acc.w2 += w2;
        acc.w11 += w1 * w1;
        acc.w22 += w2 * w2;
        acc.w12 += w1 * w2;
      }
    });
    Sums t;
    for (const auto& p : partial) {
      t.w1 += p.w1;
      t.w2 += p.w2;
      t.w11 += p.w11;
      t.w22 += p.w22;
      t.w12 += p.w12;
    }
    const double n = static_cast<double>(samples);
    const double m1 = t.w1 / n, m2 = t.w2 / n;
    CurvePoint pt;
    pt.d = d;
    if (m1 <= 0.0 || m2 <= 0.0) {
      pt.value = -std::numeric_limits<double>::infinity();
      pt.degenerate = true;
    } else {
      const double var1 = std::max(t.w11 / n - m1 * m1, 0.0);
      const double var2 = std::max(t.w22 / n - m2 * m2, 0.0);
      const double cov = t.w12 / n - m1 * m2;
      pt.value = (std::log(m2) - std::log(m1)) / kLog2;
      const double rel_var = std::max(
          var1 / (m1 * m1) + var2 / (m2 * m2) - 2.0 * cov / (m1 * m2), 0.0);
      pt.std_error = std::sqrt(rel_var / n) / kLog2;
    }
    out.push_back(pt);
  }
  return out;
}

ScalingPoint scaling_point_from_probs(int d, const PopulationProbs& probs) {
  ScalingPoint pt;
  pt.d = d;
  const double bracket = variance_bracket(probs, 0, 1);
  if (bracket <= 0.0) {
    pt.log_variance = -std::numeric_limits<double>::infinity();
    pt.log_bracket = pt.log_variance;
    pt.degenerate = true;
    return pt;
  }
  pt.log_bracket = std::log(bracket);
  pt.log_variance = std::log(bracket / (kLog2 * kLog2));
  return pt;
}

std::vector<ScalingPoint> scaling_curve(DistributionSpec::Kind kind,
                                        std::span<const int> d_range,
                                        double eps, std::uint64_t samples,
                                        std::uint64_t seed, int threads) {
  check_samples(samples);
  // Independent sample groups give an honest spread for the nonlinear
  // bracket statistic.
  constexpr int kGroups = 8;
  std::vector<ScalingPoint> out;
  out.reserve(d_range.size());
  for (const int d : d_range) {
    const std::uint64_t group_samples =
        std::max<std::uint64_t>(10000, samples / kGroups);
    double logs[kGroups];
    int good = 0;
    double sum = 0.0;
    for (int gidx = 0; gidx < kGroups; ++gidx) {
      const std::uint64_t sub_seed =
          seed + 0x51caffe5ULL * static_cast<std::uint64_t>(gidx + 1);
      PopulationProbs probs =
          kind == DistributionSpec::Kind::Gaussian
              ? mc_probs_gaussian_radial(d, eps, group_samples, sub_seed,
                                         threads)
              : mc_probs([&] {
                  switch (kind) {
                    case DistributionSpec::Kind::UniformCube:
                      return DistributionSpec::uniform_cube(d);
                    case DistributionSpec::Kind::Exponential:
                      return DistributionSpec::exponential(d);
                    case DistributionSpec::Kind::Beta25:
                      return DistributionSpec::beta25(d);
                    case DistributionSpec::Kind::Cauchy:
                      return DistributionSpec::cauchy(d);
                    case DistributionSpec::Kind::UniformSegment:
                      return DistributionSpec::uniform_segment();
                    default:
                      fail(ErrorCode::InvalidParameter,
                           "scaling_curve needs a named distribution family");
                  }
                }(), eps, group_samples, sub_seed, threads);
      const ScalingPoint pt = scaling_point_from_probs(d, probs);
      if (!pt.degenerate) {
        logs[good++] = pt.log_bracket;
        sum += pt.log_bracket;
      }
    }
    ScalingPoint pt;
    pt.d = d;
    if (good == 0) {
      pt.log_bracket = -std::numeric_limits<double>::infinity();
      pt.log_variance = pt.log_bracket;
      pt.degenerate = true;
    } else {
      const double mean = sum / good;
      double ss = 0.0;
      for (int gi = 0; gi < good; ++gi) {
        const double dd = logs[gi] - mean;
        ss += dd * dd;
      }
      pt.log_bracket = mean;
      pt.log_variance = mean - 2.0 * std::log(kLog2);
      pt.std_error = good > 1 ? std::sqrt(ss / (good - 1) / good) : 0.0;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace rcdim
