#include "rcdim/cli.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcdim/errors.hpp"
#include "rcdim/estimator.hpp"
#include "rcdim/experiment.hpp"
#include "rcdim/generators.hpp"
#include "rcdim/geometry.hpp"
#include "rcdim/io.hpp"
#include "rcdim/theory.hpp"

namespace rcdim {
namespace {

using nlohmann::json;

struct GenerateArgs {
  std::string kind = "gaussian";
  std::size_t n = 0;
  int d = 2;
  int depth = kSierpinskiDefaultDepth;
  int s = 5;
  double snr = 1.0;
  double torus_R = 2.0;
  double torus_r = 1.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
};

PointCloud run_generator(const GenerateArgs& a) {
  if (a.n == 0) fail(ErrorCode::InvalidCount, "need --n >= 1");
  if (a.kind == "sierpinski") return sierpinski(a.n, a.depth, a.seed, a.threads);
  if (a.kind == "gaussian") return gaussian_iso(a.n, a.d, a.seed, a.threads);
  if (a.kind == "aniso")
    return anisotropic_gaussian(a.n, a.s, a.snr, a.seed, a.threads);
  if (a.kind == "cube") return uniform_cube_cloud(a.n, a.d, a.seed, a.threads);
  if (a.kind == "sphere") return uniform_sphere(a.n, a.d, a.seed, a.threads);
  if (a.kind == "helix") return helix(a.n, a.seed, a.threads);
  if (a.kind == "swissroll") return swiss_roll(a.n, a.seed, a.threads);
  if (a.kind == "torus")
    return noisy_torus(a.n, a.torus_R, a.torus_r, a.sigma, a.seed, a.threads);
  fail(ErrorCode::UsageError, "unknown generator kind '" + a.kind + "'");
}

json estimate_to_json(const DimensionEstimate& e, std::uint64_t seed,
                      double density_eps, double density_2eps) {
  json j;
  j["schema"] = 1;
  j["result"]["d_hat"] = e.d_hat;
  j["result"]["d_corrected"] = e.d_corrected;
  j["result"]["sigma_hat"] = e.sigma_hat;
  j["result"]["block_values"] = e.block_values;
  j["result"]["correction"] = correction_name(e.correction);
  if (e.rounded) j["result"]["rounded"] = *e.rounded;
  j["config"]["m"] = e.m;
  j["config"]["blocks"] = e.t + e.dropped_blocks;
  j["config"]["n"] = e.n;
  j["config"]["seed"] = seed;
  if (std::isfinite(e.epsilon)) j["config"]["epsilon"] = e.epsilon;
  j["diagnostics"]["dropped_blocks"] = e.dropped_blocks;
  j["diagnostics"]["surviving_blocks"] = e.t;
  if (std::isfinite(density_eps)) {
    j["diagnostics"]["edge_density_eps"] = density_eps;
    j["diagnostics"]["edge_density_2eps"] = density_2eps;
    std::vector<std::string> warnings;
    if (density_eps == 0.0) warnings.push_back("graph at eps is empty");
    if (density_eps == 1.0) warnings.push_back("graph at eps is complete");
    if (density_2eps == 0.0) warnings.push_back("graph at 2eps is empty");
    if (density_2eps == 1.0) warnings.push_back("graph at 2eps is complete");
    if (e.saturated)
      warnings.push_back("both graphs complete on sampled rows; estimate 0");
    j["diagnostics"]["warnings"] = warnings;
  }
  return j;
}

std::string estimate_to_csv(const DimensionEstimate& e) {
  std::string s =
      "d_hat,d_corrected,sigma_hat,correction,rounded,m,blocks,n,epsilon\n";
  s += format_double17(e.d_hat);
  s += ',';
  s += format_double17(e.d_corrected);
  s += ',';
  s += format_double17(e.sigma_hat);
  s += ',';
  s += correction_name(e.correction);
  s += ',';
  s += e.rounded ? std::to_string(*e.rounded) : "";
  s += ',';
  s += std::to_string(e.m);
  s += ',';
  s += std::to_string(e.t + e.dropped_blocks);
  s += ',';
  s += std::to_string(e.n);
  s += ',';
  s += std::isfinite(e.epsilon) ? format_double17(e.epsilon) : "";
  s += '\n';
  return s;
}

void write_text(const std::string& path, const std::string& text,
                std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) fail(ErrorCode::IoError, "write failed: " + path);
}

int run_parsed(CLI::App& app, const std::vector<std::string>& args,
               std::ostream& out) {
  // CLI11 wants argv-style reversed input.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    fail(ErrorCode::UsageError, e.what());
  }
  return -1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"scale-dependent intrinsic dimension estimation"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "write a synthetic point CSV");
  cmd_gen->add_option("--kind", gen.kind,
                      "sierpinski|gaussian|aniso|cube|sphere|helix|swissroll|torus");
  cmd_gen->add_option("--n", gen.n, "number of points")->required();
  cmd_gen->add_option("--d", gen.d, "dimension parameter");
  cmd_gen->add_option("--depth", gen.depth, "sierpinski digit depth");
  cmd_gen->add_option("--s", gen.s, "anisotropic signal dimensions");
  cmd_gen->add_option("--snr", gen.snr, "anisotropic signal-to-noise ratio");
  cmd_gen->add_option("--torus-R", gen.torus_R, "torus major radius");
  cmd_gen->add_option("--torus-r", gen.torus_r, "torus tube radius");
  cmd_gen->add_option("--sigma", gen.sigma, "torus noise sd");
  cmd_gen->add_option("--seed", gen.seed, "rng seed");
  cmd_gen->add_option("--threads", gen.threads, "worker threads (0 = auto)");
  cmd_gen->add_option("--out", gen.out, "output CSV path")->required();

  struct {
    std::string input, edges_eps, edges_2eps, out;
    double epsilon = 0.0;
    std::size_t m = 0, blocks = 10;
    std::string correction = "none";
    std::string rows = "shared";
    std::string scale = "canonical";
    std::string format = "json";
    std::uint64_t seed = 0;
    bool round = false;
    int threads = 0;
  } est;
  auto* cmd_est = app.add_subcommand("estimate", "estimate intrinsic dimension");
  cmd_est->add_option("--input", est.input, "point CSV path");
  cmd_est->add_option("--edges-eps", est.edges_eps, "edge list at the small radius");
  cmd_est->add_option("--edges-2eps", est.edges_2eps, "edge list at the doubled radius");
  cmd_est->add_option("--epsilon", est.epsilon, "radius (default: pooled sd / sqrt(log(n+1)))");
  cmd_est->add_option("--m", est.m, "rows per block (default ceil(max(1, log n)))");
  cmd_est->add_option("--blocks", est.blocks, "disjoint blocks");
  cmd_est->add_option("--correction", est.correction, "none|mult|erf|2sigma");
  cmd_est->add_option("--rows", est.rows, "shared|independent row draws per radius");
  cmd_est->add_option("--scale", est.scale, "canonical|erf scale function");
  cmd_est->add_option("--seed", est.seed, "rng seed");
  cmd_est->add_flag("--round", est.round, "report the rounded estimate");
  cmd_est->add_option("--threads", est.threads, "worker threads (0 = auto)");
  cmd_est->add_option("--format", est.format, "json|csv");
  cmd_est->add_option("--out", est.out, "output path (default stdout)");

  struct {
    std::string curve = "doubling";
    std::string dist = "gaussian";
    int d_min = 1, d_max = 8;
    double epsilon = 0.5;
    std::uint64_t samples = 1000000, seed = 0;
    int threads = 0;
    std::string out;
  } theo;
  auto* cmd_theory = app.add_subcommand("theory", "population curves by Monte Carlo");
  cmd_theory->add_option("--curve", theo.curve, "doubling|scaling");
  cmd_theory->add_option("--dist", theo.dist,
                         "uniform|gaussian|exponential|beta25|cauchy|segment");
  cmd_theory->add_option("--d-min", theo.d_min, "smallest dimension");
  cmd_theory->add_option("--d-max", theo.d_max, "largest dimension");
  cmd_theory->add_option("--epsilon", theo.epsilon, "radius")->required();
  cmd_theory->add_option("--samples", theo.samples, "Monte Carlo samples per point");
  cmd_theory->add_option("--seed", theo.seed, "rng seed");
  cmd_theory->add_option("--threads", theo.threads, "worker threads (0 = auto)");
  cmd_theory->add_option("--out", theo.out, "output CSV path (default stdout)");

  struct {
    std::string gen = "gaussian";
    int d = 2, s = 5, depth = kSierpinskiDefaultDepth;
    double snr = 1.0;
    std::vector<std::size_t> n_grid;
    std::string m_rule = "log";
    std::size_t m_fixed = 0;
    std::string eps_rule = "default";
    double eps_fixed = 0.0;
    std::size_t blocks = 10, reps = 1;
    std::string correction = "none";
    std::string mult_eps = "estimation";
    std::string rows = "shared";
    std::uint64_t seed = 0;
    double d_true = std::numeric_limits<double>::quiet_NaN();
    int threads = 0;
    std::string out, format = "csv";
  } ex;
  auto* cmd_ex = app.add_subcommand("experiment", "batch estimation runs over a grid");
  cmd_ex->add_option("--gen", ex.gen,
                     "sierpinski|gaussian|aniso|cube|sphere|helix|swissroll|torus");
  cmd_ex->add_option("--d", ex.d, "generator dimension");
  cmd_ex->add_option("--s", ex.s, "anisotropic signal dimensions");
  cmd_ex->add_option("--snr", ex.snr, "anisotropic snr");
  cmd_ex->add_option("--depth", ex.depth, "sierpinski depth");
  cmd_ex->add_option("--n", ex.n_grid, "n grid (repeatable)")->required();
  cmd_ex->add_option("--m-rule", ex.m_rule,
                     "log|log10|quarter|half|threequarter|full|fixed");
  cmd_ex->add_option("--m", ex.m_fixed, "fixed rows per block (with --m-rule fixed)");
  cmd_ex->add_option("--eps-rule", ex.eps_rule,
                     "default|sdlog10|4sqrtlog|inv2log|fixed");
  cmd_ex->add_option("--epsilon", ex.eps_fixed, "fixed epsilon (with --eps-rule fixed)");
  cmd_ex->add_option("--blocks", ex.blocks, "disjoint blocks per run");
  cmd_ex->add_option("--correction", ex.correction, "none|mult|erf|2sigma");
  cmd_ex->add_option("--mult-eps", ex.mult_eps,
                     "estimation|damped multiplicative-correction epsilon");
  cmd_ex->add_option("--rows", ex.rows, "shared|independent row draws per radius");
  cmd_ex->add_option("--reps", ex.reps, "repetitions per cell");
  cmd_ex->add_option("--seed", ex.seed, "rng seed");
  cmd_ex->add_option("--d-true", ex.d_true, "true dimension for coverage");
  cmd_ex->add_option("--threads", ex.threads, "worker threads (0 = auto)");
  cmd_ex->add_option("--format", ex.format, "csv|json");
  cmd_ex->add_option("--out", ex.out, "output path (default stdout)");

  try {
    const int parsed = run_parsed(app, args, out);
    if (parsed >= 0) return parsed;

    if (cmd_gen->parsed()) {
      const PointCloud cloud = run_generator(gen);
      write_point_csv(gen.out, cloud);
      return 0;
    }

    if (cmd_est->parsed()) {
      EstimatorConfig config;
      config.m = est.m;
      config.blocks = est.blocks;
      config.seed = est.seed;
      config.round_to_integer = est.round;
      config.threads = est.threads;
      const auto corr = correction_from_name(est.correction);
      if (!corr) fail(ErrorCode::UsageError, "unknown correction '" + est.correction + "'");
      config.correction = *corr;
      if (est.rows == "independent")
        config.row_mode = RowMode::IndependentPerRadius;
      else if (est.rows != "shared")
        fail(ErrorCode::UsageError, "unknown row mode '" + est.rows + "'");

      DimensionEstimate result;
      double density_eps = std::numeric_limits<double>::quiet_NaN();
      double density_2eps = density_eps;
      if (!est.input.empty()) {
        const PointCloud cloud = read_point_csv(est.input);
        const double eps =
            est.epsilon > 0.0 ? est.epsilon : default_epsilon(cloud);
        config.epsilon = eps;
        if (est.scale == "erf")
          config.scale = ScaleFunction::erf_gaussian(eps);
        else if (est.scale != "canonical")
          fail(ErrorCode::UsageError, "unknown scale '" + est.scale + "'");
        result = estimate_dimension(cloud, MetricSpec{}, config);
        density_eps = result.mean_p_eps;
        density_2eps = result.mean_p_2eps;
      } else if (!est.edges_eps.empty() && !est.edges_2eps.empty()) {
        const EdgeListGraph small = read_edge_list(est.edges_eps);
        const EdgeListGraph big = read_edge_list(est.edges_2eps);
        validate_nested(small, big);
        const auto deg_small = small.degrees();
        const auto deg_big = big.degrees();
        const double label = est.epsilon > 0.0
                                 ? est.epsilon
                                 : std::numeric_limits<double>::quiet_NaN();
        if (est.scale == "erf") {
          if (!(est.epsilon > 0.0))
            fail(ErrorCode::UsageError,
                 "--scale erf needs --epsilon with edge-list input");
          config.scale = ScaleFunction::erf_gaussian(est.epsilon);
        }
        auto degree_fn = [&](std::span<const std::uint32_t> rows) {
          std::vector<std::uint32_t> a(rows.size()), b(rows.size());
          for (std::size_t k = 0; k < rows.size(); ++k) {
            a[k] = deg_small[rows[k]];
            b[k] = deg_big[rows[k]];
          }
          return std::make_pair(std::move(a), std::move(b));
        };
        result =
            estimate_dimension_from_degrees(small.n, label, config, degree_fn);
        const double denom = static_cast<double>(small.n) *
                             static_cast<double>(small.n - 1) / 2.0;
        density_eps = static_cast<double>(small.edges.size()) / denom;
        density_2eps = static_cast<double>(big.edges.size()) / denom;
      } else {
        fail(ErrorCode::UsageError,
             "need --input or both --edges-eps and --edges-2eps");
      }

      if (est.format == "json")
        write_text(est.out,
                   estimate_to_json(result, est.seed, density_eps,
                                    density_2eps).dump(2) + "\n",
                   out);
      else if (est.format == "csv")
        write_text(est.out, estimate_to_csv(result), out);
      else
        fail(ErrorCode::UsageError, "unknown format '" + est.format + "'");
      return 0;
    }

    if (cmd_theory->parsed()) {
      if (theo.d_min < 1 || theo.d_max < theo.d_min)
        fail(ErrorCode::UsageError, "need 1 <= d-min <= d-max");
      const DistributionSpec probe = DistributionSpec::from_name(theo.dist, 1);
      std::vector<int> d_range;
      for (int d = theo.d_min; d <= theo.d_max; ++d) d_range.push_back(d);
      std::string text;
      if (theo.curve == "doubling") {
        const auto curve = doubling_curve(probe.kind(), d_range, theo.epsilon,
                                          theo.samples, theo.seed, theo.threads);
        text = "d,value,stderr\n";
        for (const auto& pt : curve)
          text += std::to_string(pt.d) + "," + format_double17(pt.value) + "," +
                  format_double17(pt.std_error) + "\n";
      } else if (theo.curve == "scaling") {
        const auto curve = scaling_curve(probe.kind(), d_range, theo.epsilon,
                                         theo.samples, theo.seed, theo.threads);
        text = "d,value,stderr,log_bracket\n";
        for (const auto& pt : curve)
          text += std::to_string(pt.d) + "," + format_double17(pt.log_variance) +
                  "," + format_double17(pt.std_error) + "," +
                  format_double17(pt.log_bracket) + "\n";
      } else {
        fail(ErrorCode::UsageError, "unknown curve '" + theo.curve + "'");
      }
      write_text(theo.out, text, out);
      return 0;
    }

    if (cmd_ex->parsed()) {
      ExperimentConfig config;
      const auto g = experiment_generator_from_name(ex.gen);
      if (!g) fail(ErrorCode::UsageError, "unknown generator '" + ex.gen + "'");
      config.generator = *g;
      config.gen_d = ex.d;
      config.gen_s = ex.s;
      config.gen_snr = ex.snr;
      config.sierpinski_depth = ex.depth;
      config.n_grid = ex.n_grid;
      if (ex.m_rule == "log") config.m_rule = MRule::CeilLogE;
      else if (ex.m_rule == "log10") config.m_rule = MRule::CeilLog10;
      else if (ex.m_rule == "quarter") { config.m_rule = MRule::Power; config.m_power = 0.25; }
      else if (ex.m_rule == "half") { config.m_rule = MRule::Power; config.m_power = 0.5; }
      else if (ex.m_rule == "threequarter") { config.m_rule = MRule::Power; config.m_power = 0.75; }
      else if (ex.m_rule == "full") config.m_rule = MRule::Full;
      else if (ex.m_rule == "fixed") { config.m_rule = MRule::Fixed; config.m_fixed = ex.m_fixed; }
      else fail(ErrorCode::UsageError, "unknown m rule '" + ex.m_rule + "'");
      if (ex.eps_rule == "default") config.eps_rule = EpsilonRule::PooledSdLogE;
      else if (ex.eps_rule == "sdlog10") config.eps_rule = EpsilonRule::PooledSdLog10;
      else if (ex.eps_rule == "4sqrtlog") config.eps_rule = EpsilonRule::FourOverSqrtLogN;
      else if (ex.eps_rule == "inv2log") config.eps_rule = EpsilonRule::InvSqrtTwoLogN;
      else if (ex.eps_rule == "fixed") { config.eps_rule = EpsilonRule::Fixed; config.eps_fixed = ex.eps_fixed; }
      else fail(ErrorCode::UsageError, "unknown eps rule '" + ex.eps_rule + "'");
      const auto corr = correction_from_name(ex.correction);
      if (!corr) fail(ErrorCode::UsageError, "unknown correction '" + ex.correction + "'");
      config.correction = *corr;
      if (ex.mult_eps == "damped")
        config.correction_eps_rule = CorrectionEpsilonRule::DampedLog;
      else if (ex.mult_eps != "estimation")
        fail(ErrorCode::UsageError, "unknown mult-eps rule '" + ex.mult_eps + "'");
      if (ex.rows == "independent")
        config.row_mode = RowMode::IndependentPerRadius;
      else if (ex.rows != "shared")
        fail(ErrorCode::UsageError, "unknown row mode '" + ex.rows + "'");
      config.blocks = ex.blocks;
      config.repetitions = ex.reps;
      config.seed = ex.seed;
      config.d_true = ex.d_true;
      config.threads = ex.threads;

      const auto rows = run_experiment(config);
      if (ex.format == "csv") {
        std::string text =
            "n,m,blocks,d_true,reps,failed,mean_d,sd_d,mean_corrected,"
            "sd_corrected,mean_sigma_hat,coverage,mean_wall_ms\n";
        for (const auto& r : rows) {
          text += std::to_string(r.n) + "," + std::to_string(r.m) + "," +
                  std::to_string(r.blocks) + "," + format_double17(r.d_true) +
                  "," + std::to_string(r.reps_requested) + "," +
                  std::to_string(r.reps_failed) + "," +
                  format_double17(r.mean_d) + "," + format_double17(r.sd_d) +
                  "," + format_double17(r.mean_corrected) + "," +
                  format_double17(r.sd_corrected) + "," +
                  format_double17(r.mean_sigma_hat) + "," +
                  format_double17(r.coverage) + "," +
                  format_double17(r.mean_wall_ms) + "\n";
        }
        write_text(ex.out, text, out);
      } else if (ex.format == "json") {
        json j;
        j["schema"] = 1;
        j["rows"] = json::array();
        for (const auto& r : rows) {
          json row;
          row["n"] = r.n;
          row["m"] = r.m;
          row["blocks"] = r.blocks;
          if (std::isfinite(r.d_true)) row["d_true"] = r.d_true;
          row["reps"] = r.reps_requested;
          row["failed"] = r.reps_failed;
          row["mean_d"] = r.mean_d;
          row["sd_d"] = r.sd_d;
          row["mean_corrected"] = r.mean_corrected;
          row["sd_corrected"] = r.sd_corrected;
          row["mean_sigma_hat"] = r.mean_sigma_hat;
          if (std::isfinite(r.coverage)) row["coverage"] = r.coverage;
          row["mean_wall_ms"] = r.mean_wall_ms;
          j["rows"].push_back(row);
        }
        write_text(ex.out, j.dump(2) + "\n", out);
      } else {
        fail(ErrorCode::UsageError, "unknown format '" + ex.format + "'");
      }
      return 0;
    }

    fail(ErrorCode::UsageError, "no subcommand given");
  } catch (const Error& e) {
    json j;
    j["schema"] = 1;
    j["error"]["code"] = error_code_name(e.code());
    j["error"]["message"] = e.what();
    err << j.dump(2) << "\n";
    return error_code_exit_status(e.code());
  } catch (const std::exception& e) {
    json j;
    j["schema"] = 1;
    j["error"]["code"] = "Internal";
    j["error"]["message"] = e.what();
    err << j.dump(2) << "\n";
    return 1;
  }
}

}  // namespace rcdim
