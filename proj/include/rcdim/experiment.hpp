#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rcdim/estimator.hpp"

namespace rcdim {

enum class ExperimentGenerator {
  Sierpinski,
  GaussianIso,
  AnisotropicGaussian,
  UniformCube,
  UniformSphere,
  Helix,
  SwissRoll,
  NoisyTorus,
};

const char* experiment_generator_name(ExperimentGenerator g);
std::optional<ExperimentGenerator> experiment_generator_from_name(
    const std::string& name);

/// How many rows feed each block estimate.
enum class MRule {
  CeilLogE,    // ceil(max(1, ln n))
  CeilLog10,   // ceil(max(1, log10 n))
  Power,       // ceil(n^power)
  Full,        // m = n (forces a single shared-row block)
  Fixed,
};

/// Radius selection per repetition.
enum class EpsilonRule {
  PooledSdLogE,    // sd(vect X) / sqrt(ln(n+1))
  PooledSdLog10,   // sd(vect X) / sqrt(log10(n+1))
  FourOverSqrtLogN,  // 4 / sqrt(ln n)
  InvSqrtTwoLogN,    // 1 / sqrt(2 ln n)
  Fixed,
};

/// Epsilon handed to the multiplicative correction.
enum class CorrectionEpsilonRule {
  Estimation,  // same epsilon the estimator used
  /// Damped schedule log(2)^2 / (4 sqrt(ln n)): multiplies estimates by
  /// 1 + log(2) / (2 sqrt(ln n)).
  DampedLog,
};

struct ExperimentConfig {
  ExperimentGenerator generator = ExperimentGenerator::GaussianIso;
  int gen_d = 2;       // gaussian / cube / sphere intrinsic dimension
  int gen_s = 5;       // anisotropic signal dimensions
  double gen_snr = 1.0;
  int sierpinski_depth = 100;

  std::vector<std::size_t> n_grid;
  MRule m_rule = MRule::CeilLogE;
  double m_power = 0.5;
  std::size_t m_fixed = 0;

  EpsilonRule eps_rule = EpsilonRule::PooledSdLogE;
  double eps_fixed = 0.0;

  std::size_t blocks = 10;
  RowMode row_mode = RowMode::Shared;
  Correction correction = Correction::None;
  CorrectionEpsilonRule correction_eps_rule = CorrectionEpsilonRule::Estimation;

  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  double d_true = std::numeric_limits<double>::quiet_NaN();
  int threads = 0;
};

struct ReportRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t blocks = 0;
  double d_true = std::numeric_limits<double>::quiet_NaN();
  std::size_t reps_requested = 0;
  std::size_t reps_failed = 0;
  double mean_d = 0.0;
  double sd_d = 0.0;
  double mean_corrected = 0.0;
  double sd_corrected = 0.0;
  double mean_sigma_hat = 0.0;
  /// Fraction of runs with |d_true - single-block estimate| <= 2 sigma_hat.
  double coverage = std::numeric_limits<double>::quiet_NaN();
  double mean_wall_ms = 0.0;
};

/// One row per n-grid cell, aggregated over seeded repetitions (fresh
/// design points each repetition). Failed repetitions are counted and the
/// run continues.
std::vector<ReportRow> run_experiment(const ExperimentConfig& config);

void write_report_csv(const std::string& path,
                      const std::vector<ReportRow>& rows);

std::size_t resolve_m(MRule rule, double power, std::size_t fixed,
                      std::size_t n);

}  // namespace rcdim
