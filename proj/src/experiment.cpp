#include "rcdim/experiment.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "rcdim/errors.hpp"
#include "rcdim/generators.hpp"
#include "rcdim/geometry.hpp"
#include "rcdim/io.hpp"
#include "rcdim/parallel.hpp"
#include "rcdim/rng.hpp"

namespace rcdim {
namespace {

constexpr double kLog2 = 0.69314718055994530942;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (a + 1));
  s ^= 0xc2b2ae3d27d4eb4fULL * (b + 1);
  return splitmix64_next(s);
}

PointCloud make_cloud(const ExperimentConfig& cfg, std::size_t n,
                      std::uint64_t seed) {
  switch (cfg.generator) {
    case ExperimentGenerator::Sierpinski:
      return sierpinski(n, cfg.sierpinski_depth, seed, 1);
    case ExperimentGenerator::GaussianIso:
      return gaussian_iso(n, cfg.gen_d, seed, 1);
    case ExperimentGenerator::AnisotropicGaussian:
      return anisotropic_gaussian(n, cfg.gen_s, cfg.gen_snr, seed, 1);
    case ExperimentGenerator::UniformCube:
      return uniform_cube_cloud(n, cfg.gen_d, seed, 1);
    case ExperimentGenerator::UniformSphere:
      return uniform_sphere(n, cfg.gen_d, seed, 1);
    case ExperimentGenerator::Helix:
      return helix(n, seed, 1);
    case ExperimentGenerator::SwissRoll:
      return swiss_roll(n, seed, 1);
    case ExperimentGenerator::NoisyTorus:
      return noisy_torus(n, 2.0, 1.0, 0.0, seed, 1);
  }
  fail(ErrorCode::InvalidParameter, "unknown generator");
}

double resolve_epsilon(const ExperimentConfig& cfg, const PointCloud& cloud,
                       std::size_t n) {
  switch (cfg.eps_rule) {
    case EpsilonRule::PooledSdLogE:
      return default_epsilon(cloud);
    case EpsilonRule::PooledSdLog10:
      return pooled_coordinate_sd(cloud) /
             std::sqrt(std::log10(static_cast<double>(n) + 1.0));
    case EpsilonRule::FourOverSqrtLogN:
      return 4.0 / std::sqrt(std::log(static_cast<double>(n)));
    case EpsilonRule::InvSqrtTwoLogN:
      return 1.0 / std::sqrt(2.0 * std::log(static_cast<double>(n)));
    case EpsilonRule::Fixed:
      if (!(cfg.eps_fixed > 0.0))
        fail(ErrorCode::InvalidRadius, "fixed epsilon must be positive");
      return cfg.eps_fixed;
  }
  fail(ErrorCode::InvalidParameter, "unknown epsilon rule");
}

struct RepOutcome {
  bool ok = false;
  double d_hat = 0.0;
  double d_corrected = 0.0;
  double sigma_hat = 0.0;
  double first_block = 0.0;
  double wall_ms = 0.0;
};

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (const double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

const char* experiment_generator_name(ExperimentGenerator g) {
  switch (g) {
    case ExperimentGenerator::Sierpinski: return "sierpinski";
    case ExperimentGenerator::GaussianIso: return "gaussian";
    case ExperimentGenerator::AnisotropicGaussian: return "aniso";
    case ExperimentGenerator::UniformCube: return "cube";
    case ExperimentGenerator::UniformSphere: return "sphere";
    case ExperimentGenerator::Helix: return "helix";
    case ExperimentGenerator::SwissRoll: return "swissroll";
    case ExperimentGenerator::NoisyTorus: return "torus";
  }
  return "?";
}

std::optional<ExperimentGenerator> experiment_generator_from_name(
    const std::string& name) {
  for (const auto g :
       {ExperimentGenerator::Sierpinski, ExperimentGenerator::GaussianIso,
        ExperimentGenerator::AnisotropicGaussian,
        ExperimentGenerator::UniformCube, ExperimentGenerator::UniformSphere,
        ExperimentGenerator::Helix, ExperimentGenerator::SwissRoll,
        ExperimentGenerator::NoisyTorus}) {
    if (name == experiment_generator_name(g)) return g;
  }
  return std::nullopt;
}

std::size_t resolve_m(MRule rule, double power, std::size_t fixed,
                      std::size_t n) {
  const double nd = static_cast<double>(n);
  switch (rule) {
    case MRule::CeilLogE:
      return static_cast<std::size_t>(std::ceil(std::max(1.0, std::log(nd))));
    case MRule::CeilLog10:
      return static_cast<std::size_t>(
          std::ceil(std::max(1.0, std::log10(nd))));
    case MRule::Power:
      return std::min<std::size_t>(
          n, static_cast<std::size_t>(std::ceil(std::pow(nd, power))));
    case MRule::Full:
      return n;
    case MRule::Fixed:
      if (fixed == 0) fail(ErrorCode::InvalidParameter, "fixed m must be > 0");
      return fixed;
  }
  fail(ErrorCode::InvalidParameter, "unknown m rule");
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.repetitions < 1)
    fail(ErrorCode::InvalidParameter, "need at least one repetition");
  if (cfg.n_grid.empty())
    fail(ErrorCode::InvalidParameter, "empty n grid");

  std::vector<ReportRow> report;
  report.reserve(cfg.n_grid.size());

  for (std::size_t cell = 0; cell < cfg.n_grid.size(); ++cell) {
    const std::size_t n = cfg.n_grid[cell];
    const std::size_t m = resolve_m(cfg.m_rule, cfg.m_power, cfg.m_fixed, n);

    // Fit the requested blocks into n; if even two independent row sets do
    // not fit, degrade to shared rows (m = n always lands here).
    RowMode row_mode = cfg.row_mode;
    std::size_t factor = row_mode == RowMode::IndependentPerRadius ? 2 : 1;
    if (factor * m > n) {
      row_mode = RowMode::Shared;
      factor = 1;
    }
    const std::size_t t =
        std::max<std::size_t>(1, std::min(cfg.blocks, n / (factor * m)));

    std::vector<RepOutcome> reps(cfg.repetitions);
    parallel_chunks(cfg.repetitions, cfg.threads, [&](std::size_t r) {
      RepOutcome& out = reps[r];
      try {
        const PointCloud cloud = make_cloud(cfg, n, mix_seed(cfg.seed, cell, r));
        const double eps = resolve_epsilon(cfg, cloud, n);

        EstimatorConfig est;
        est.m = m;
        est.blocks = t;
        est.epsilon = eps;
        est.correction = cfg.correction;
        est.seed = mix_seed(cfg.seed ^ 0x5eedULL, cell, r);
        est.row_mode = row_mode;
        est.threads = 1;
        if (cfg.correction == Correction::Multiplicative &&
            cfg.correction_eps_rule == CorrectionEpsilonRule::DampedLog)
          est.correction_epsilon =
              0.25 * kLog2 * kLog2 / std::sqrt(std::log(static_cast<double>(n)));

        const auto t0 = std::chrono::steady_clock::now();
        const DimensionEstimate est_out =
            estimate_dimension(cloud, MetricSpec{}, est);
        const auto t1 = std::chrono::steady_clock::now();

        out.ok = true;
        out.d_hat = est_out.d_hat;
        out.d_corrected = est_out.d_corrected;
        out.sigma_hat = est_out.sigma_hat;
        out.first_block = est_out.block_values.front();
        out.wall_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
      } catch (const Error&) {
        out.ok = false;
      }
    });

    ReportRow row;
    row.n = n;
    row.m = m;
    row.blocks = t;
    row.d_true = cfg.d_true;
    row.reps_requested = cfg.repetitions;
    std::vector<double> d, dc, sh, wall;
    std::size_t covered = 0, with_coverage = 0;
    for (const auto& rep : reps) {
      if (!rep.ok) {
        ++row.reps_failed;
        continue;
      }
      d.push_back(rep.d_hat);
      dc.push_back(rep.d_corrected);
      sh.push_back(rep.sigma_hat);
      wall.push_back(rep.wall_ms);
      if (std::isfinite(cfg.d_true)) {
        ++with_coverage;
        if (std::fabs(cfg.d_true - rep.first_block) <= 2.0 * rep.sigma_hat)
          ++covered;
      }
    }
    if (d.empty()) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.mean_d = row.sd_d = row.mean_corrected = nan;
      row.sd_corrected = row.mean_sigma_hat = row.mean_wall_ms = nan;
      report.push_back(row);
      continue;
    }
    row.mean_d = mean(d);
    row.sd_d = sample_sd(d);
    row.mean_corrected = mean(dc);
    row.sd_corrected = sample_sd(dc);
    row.mean_sigma_hat = mean(sh);
    row.mean_wall_ms = mean(wall);
    if (with_coverage > 0)
      row.coverage =
          static_cast<double>(covered) / static_cast<double>(with_coverage);
    report.push_back(row);
  }
  return report;
}

void write_report_csv(const std::string& path,
                      const std::vector<ReportRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << "n,m,blocks,d_true,reps,failed,mean_d,sd_d,mean_corrected,"
         "sd_corrected,mean_sigma_hat,coverage,mean_wall_ms\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.m << ',' << r.blocks << ','
        << format_double17(r.d_true) << ',' << r.reps_requested << ','
        << r.reps_failed << ',' << format_double17(r.mean_d) << ','
        << format_double17(r.sd_d) << ',' << format_double17(r.mean_corrected)
        << ',' << format_double17(r.sd_corrected) << ','
        << format_double17(r.mean_sigma_hat) << ','
        << format_double17(r.coverage) << ','
        << format_double17(r.mean_wall_ms) << '\n';
  }
  if (!out) fail(ErrorCode::IoError, "write failed: " + path);
}

}  // namespace rcdim
