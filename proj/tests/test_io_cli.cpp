#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rcdim/cli.hpp"
#include "rcdim/errors.hpp"
#include "rcdim/estimator.hpp"
#include "rcdim/generators.hpp"
#include "rcdim/geometry.hpp"
#include "rcdim/io.hpp"

using namespace rcdim;
using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("rcdim_test_" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("point csv round-trips exactly") {
  TempDir tmp;
  const auto cloud = gaussian_iso(500, 3, 42);
  const auto path = tmp.file("pts.csv");
  write_point_csv(path, cloud);
  const auto back = read_point_csv(path);
  CHECK(back.dim == cloud.dim);
  CHECK(back.coords == cloud.coords);
}

TEST_CASE("csv parse errors name the line") {
  TempDir tmp;
  const auto path = tmp.file("bad.csv");
  std::ofstream(path) << "1.0,2.0\n1.0,oops\n";
  try {
    read_point_csv(path);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
}

TEST_CASE("edge list io and validation") {
  TempDir tmp;
  EdgeListGraph g;
  g.n = 5;
  g.edges = {{0, 1}, {1, 2}, {2, 4}};
  const auto path = tmp.file("edges.txt");
  write_edge_list(path, g);
  const auto back = read_edge_list(path);
  CHECK(back.n == 5);
  CHECK(back.edges == g.edges);
  CHECK(back.degrees() == std::vector<std::uint32_t>{1, 2, 2, 0, 1});

  EdgeListGraph super = g;
  super.edges.push_back({0, 2});
  std::sort(super.edges.begin(), super.edges.end());
  CHECK_NOTHROW(validate_nested(g, super));
  CHECK_THROWS_AS(validate_nested(super, g), Error);

  std::ofstream(tmp.file("dupe.txt")) << "n 3\n0 1\n0 1\n";
  CHECK_THROWS_AS(read_edge_list(tmp.file("dupe.txt")), Error);
  std::ofstream(tmp.file("order.txt")) << "n 3\n1 0\n";
  CHECK_THROWS_AS(read_edge_list(tmp.file("order.txt")), Error);
  std::ofstream(tmp.file("range.txt")) << "n 3\n1 7\n";
  CHECK_THROWS_AS(read_edge_list(tmp.file("range.txt")), Error);
}

TEST_CASE("edge-list degrees equal cloud degrees") {
  const auto cloud = gaussian_iso(300, 2, 17);
  const double eps = 0.9;
  const auto graph = edges_from_cloud(cloud, {}, eps);
  const auto deg = graph.degrees();
  std::vector<std::uint32_t> rows(cloud.size());
  for (std::uint32_t i = 0; i < rows.size(); ++i) rows[i] = i;
  const auto prof = compute_degrees(cloud, {}, eps, rows);
  CHECK(deg == prof.degrees);
}

TEST_CASE("edge-list path and point path produce the identical estimate") {
  const auto cloud = gaussian_iso(400, 3, 23);
  const double eps = 1.1;
  EstimatorConfig cfg;
  cfg.seed = 77;
  cfg.blocks = 8;
  cfg.epsilon = eps;
  const auto direct = estimate_dimension(cloud, {}, cfg);

  const auto small = edges_from_cloud(cloud, {}, eps);
  const auto big = edges_from_cloud(cloud, {}, 2 * eps);
  validate_nested(small, big);
  const auto deg_small = small.degrees();
  const auto deg_big = big.degrees();
  auto degree_fn = [&](std::span<const std::uint32_t> rows) {
    std::vector<std::uint32_t> a(rows.size()), b(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      a[k] = deg_small[rows[k]];
      b[k] = deg_big[rows[k]];
    }
    return std::make_pair(std::move(a), std::move(b));
  };
  const auto via_edges =
      estimate_dimension_from_degrees(cloud.size(), eps, cfg, degree_fn);
  CHECK(via_edges.d_hat == direct.d_hat);
  CHECK(via_edges.sigma_hat == direct.sigma_hat);
  CHECK(via_edges.block_values == direct.block_values);
}

TEST_CASE("cli generate is byte-identical per seed and errors on n=0") {
  TempDir tmp;
  const auto a = tmp.file("a.csv"), b = tmp.file("b.csv");
  CHECK(cli({"generate", "--kind", "sierpinski", "--n", "2000", "--seed", "9",
             "--out", a})
            .status == 0);
  CHECK(cli({"generate", "--kind", "sierpinski", "--n", "2000", "--seed", "9",
             "--out", b})
            .status == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find(',') != std::string::npos);

  // row/column shape of the written file
  const auto text = slurp(a);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2000);
  const auto first = text.substr(0, text.find('\n'));
  CHECK(std::count(first.begin(), first.end(), ',') == 1);  // 2 columns

  const auto r = cli({"generate", "--kind", "gaussian", "--n", "0", "--out",
                      tmp.file("zero.csv")});
  CHECK(r.status != 0);
  const auto j = json::parse(r.err);
  CHECK(j["error"]["code"] == "InvalidCount");
}

TEST_CASE("cli estimate on points emits a versioned json report") {
  TempDir tmp;
  const auto pts = tmp.file("pts.csv");
  CHECK(cli({"generate", "--kind", "gaussian", "--d", "2", "--n", "3000",
             "--seed", "3", "--out", pts})
            .status == 0);
  const auto r = cli({"estimate", "--input", pts, "--seed", "5", "--round"});
  CHECK(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["result"].contains("d_hat"));
  CHECK(j["result"].contains("sigma_hat"));
  CHECK(j["result"]["block_values"].is_array());
  CHECK(j["result"].contains("rounded"));
  CHECK(j["config"].contains("epsilon"));
  CHECK(j["diagnostics"].contains("edge_density_eps"));

  // determinism
  const auto r2 = cli({"estimate", "--input", pts, "--seed", "5", "--round"});
  CHECK(r2.out == r.out);
}

TEST_CASE("cli estimate agrees between point and edge-list inputs") {
  TempDir tmp;
  const auto cloud = gaussian_iso(500, 2, 31);
  const double eps = 0.6;
  write_point_csv(tmp.file("p.csv"), cloud);
  write_edge_list(tmp.file("e1.txt"), edges_from_cloud(cloud, {}, eps));
  write_edge_list(tmp.file("e2.txt"), edges_from_cloud(cloud, {}, 2 * eps));

  const auto r1 = cli({"estimate", "--input", tmp.file("p.csv"), "--epsilon",
                       "0.6", "--seed", "11"});
  const auto r2 = cli({"estimate", "--edges-eps", tmp.file("e1.txt"),
                       "--edges-2eps", tmp.file("e2.txt"), "--seed", "11"});
  REQUIRE(r1.status == 0);
  REQUIRE(r2.status == 0);
  const auto j1 = json::parse(r1.out), j2 = json::parse(r2.out);
  CHECK(j1["result"]["d_hat"] == j2["result"]["d_hat"]);
  CHECK(j1["result"]["sigma_hat"] == j2["result"]["sigma_hat"]);
  CHECK(j1["result"]["block_values"] == j2["result"]["block_values"]);
}

TEST_CASE("cli estimate rejects non-nested edge lists with its own code") {
  TempDir tmp;
  std::ofstream(tmp.file("e1.txt")) << "n 4\n0 1\n2 3\n";
  std::ofstream(tmp.file("e2.txt")) << "n 4\n0 1\n";
  const auto r = cli({"estimate", "--edges-eps", tmp.file("e1.txt"),
                      "--edges-2eps", tmp.file("e2.txt")});
  CHECK(r.status == error_code_exit_status(ErrorCode::NestednessViolation));
  const auto j = json::parse(r.err);
  CHECK(j["error"]["code"] == "NestednessViolation");
}

TEST_CASE("cli estimate complete graphs give zero with saturation warning") {
  TempDir tmp;
  std::ofstream(tmp.file("e1.txt")) << "n 3\n0 1\n0 2\n1 2\n";
  std::ofstream(tmp.file("e2.txt")) << "n 3\n0 1\n0 2\n1 2\n";
  const auto r = cli({"estimate", "--edges-eps", tmp.file("e1.txt"),
                      "--edges-2eps", tmp.file("e2.txt"), "--m", "1",
                      "--blocks", "2"});
  REQUIRE(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["d_hat"] == 0.0);
  CHECK(j["result"]["sigma_hat"] == 0.0);
}

TEST_CASE("cli estimate reports parse errors with the offending line") {
  TempDir tmp;
  std::ofstream(tmp.file("bad.csv")) << "0.5,0.5\nnot,a,number\n";
  const auto r = cli({"estimate", "--input", tmp.file("bad.csv")});
  CHECK(r.status == error_code_exit_status(ErrorCode::ParseError));
  const auto j = json::parse(r.err);
  CHECK(j["error"]["code"] == "ParseError");
  CHECK(j["error"]["message"].get<std::string>().find(":2:") !=
        std::string::npos);
}

TEST_CASE("cli theory doubling emits d,value,stderr rows") {
  TempDir tmp;
  const auto out = tmp.file("curve.csv");
  const auto r = cli({"theory", "--curve", "doubling", "--dist", "gaussian",
                      "--d-min", "1", "--d-max", "15", "--epsilon", "0.5",
                      "--samples", "20000", "--seed", "2", "--out", out});
  REQUIRE(r.status == 0);
  const auto text = slurp(out);
  CHECK(text.rfind("d,value,stderr\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 16);  // header + 15 rows

  // unknown distribution -> usage error
  const auto bad = cli({"theory", "--curve", "doubling", "--dist", "wat",
                        "--epsilon", "0.5"});
  CHECK(bad.status == error_code_exit_status(ErrorCode::UsageError));

  // same seed -> identical file
  const auto out2 = tmp.file("curve2.csv");
  cli({"theory", "--curve", "doubling", "--dist", "gaussian", "--d-min", "1",
       "--d-max", "15", "--epsilon", "0.5", "--samples", "20000", "--seed",
       "2", "--out", out2});
  CHECK(slurp(out2) == text);
}

TEST_CASE("cli experiment smoke run over a 2-cell grid") {
  TempDir tmp;
  const auto out = tmp.file("exp.csv");
  const auto r =
      cli({"experiment", "--gen", "gaussian", "--d", "2", "--n", "200",
           "--n", "400", "--reps", "1", "--seed", "4", "--out", out});
  REQUIRE(r.status == 0);
  const auto text = slurp(out);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);  // header + 2 rows
  CHECK(text.find("mean_d") != std::string::npos);
}

TEST_CASE("cli experiment reports are deterministic per config and seed") {
  TempDir tmp;
  const std::vector<std::string> args{
      "experiment", "--gen",  "sierpinski", "--n",   "300", "--reps", "3",
      "--seed",     "21",     "--blocks",   "5",     "--d-true",
      "1.8927892607143721",   "--out",      tmp.file("a.csv")};
  auto args2 = args;
  args2.back() = tmp.file("b.csv");
  REQUIRE(cli(args).status == 0);
  REQUIRE(cli(args2).status == 0);
  // identical up to the wall-clock column (the last one)
  auto strip_wall = [](const std::string& text) {
    std::string out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      out += line.substr(0, line.rfind(','));
      out += '\n';
    }
    return out;
  };
  CHECK(strip_wall(slurp(tmp.file("a.csv"))) ==
        strip_wall(slurp(tmp.file("b.csv"))));
}

TEST_CASE("cli theory scaling emits the variance and bracket columns") {
  TempDir tmp;
  const auto out = tmp.file("scaling.csv");
  const auto r = cli({"theory", "--curve", "scaling", "--dist", "gaussian",
                      "--d-min", "1", "--d-max", "4", "--epsilon", "1.0",
                      "--samples", "80000", "--seed", "6", "--out", out});
  REQUIRE(r.status == 0);
  const auto text = slurp(out);
  CHECK(text.rfind("d,value,stderr,log_bracket\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
