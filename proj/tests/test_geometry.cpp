#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rcdim/errors.hpp"
#include "rcdim/estimator.hpp"
#include "rcdim/generators.hpp"
#include "rcdim/geometry.hpp"
#include "rcdim/rng.hpp"

using namespace rcdim;

namespace {

PointCloud random_cloud(std::size_t n, int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> coords(n * dim);
  for (auto& c : coords) c = rng.uniform();
  return PointCloud(std::move(coords), dim);
}

// O(n^2) oracle, written against the raw definition; independent of the
// library's counting kernel.
std::vector<std::uint32_t> brute_degrees(const PointCloud& cloud, double eps,
                                         const std::vector<std::uint32_t>& rows) {
  std::vector<std::uint32_t> out;
  for (const auto i : rows) {
    std::uint32_t c = 0;
    for (std::size_t j = 0; j < cloud.size(); ++j) {
      if (j == i) continue;
      double s = 0.0;
      for (int k = 0; k < cloud.dim; ++k) {
        const double d = cloud.point(i)[k] - cloud.point(j)[k];
        s += d * d;
      }
      if (std::sqrt(s) <= eps) ++c;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<std::uint32_t> all_rows(std::size_t n) {
  std::vector<std::uint32_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

}  // namespace

TEST_CASE("two points within radius have degree 1") {
  PointCloud cloud({0.0, 0.0, 0.5, 0.0}, 2);
  const std::vector<std::uint32_t> rows{0, 1};
  const auto prof = compute_degrees(cloud, {}, 1.0, rows);
  CHECK(prof.degrees == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("radius below the minimum distance gives an empty graph") {
  const auto cloud = random_cloud(40, 3, 1);
  const auto rows = all_rows(40);
  const auto prof = compute_degrees(cloud, {}, 1e-9, rows);
  for (const auto d : prof.degrees) CHECK(d == 0);
  const auto adj = compute_adjacency_rows(cloud, {}, 1e-9, rows);
  for (const auto& r : adj.rows) CHECK(r.empty());
}

TEST_CASE("degrees match the brute-force oracle") {
  for (const std::uint64_t seed : {10u, 11u, 12u}) {
    const auto cloud = random_cloud(10, 2, seed);
    const auto rows = all_rows(10);
    const auto prof = compute_degrees(cloud, {}, 0.3, rows);
    CHECK(prof.degrees == brute_degrees(cloud, 0.3, rows));
  }
}

TEST_CASE("adjacency rows match brute force and degree counts") {
  const auto cloud = random_cloud(10, 3, 77);
  const auto rows = all_rows(10);
  const double eps = 0.45;
  const auto adj = compute_adjacency_rows(cloud, {}, eps, rows);
  const auto deg = compute_degrees(cloud, {}, eps, rows);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(adj.rows[k].size() == deg.degrees[k]);
    CHECK(std::is_sorted(adj.rows[k].begin(), adj.rows[k].end()));
    for (const auto j : adj.rows[k]) CHECK(j != rows[k]);
  }
  // full-matrix symmetry
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto j : adj.rows[i]) {
      const auto& back = adj.rows[j];
      CHECK(std::binary_search(back.begin(), back.end(), rows[i]));
    }
  }
}

TEST_CASE("boundary distances count as edges") {
  // distance exactly 1 between (0,0) and (1,0); exactly representable
  PointCloud cloud({0.0, 0.0, 1.0, 0.0, 0.0, 2.5}, 2);
  const std::vector<std::uint32_t> rows{0};
  CHECK(compute_degrees(cloud, {}, 1.0, rows).degrees[0] == 1);
  CHECK(compute_degrees(cloud, {}, std::nextafter(1.0, 0.0), rows).degrees[0] ==
        0);
}

TEST_CASE("radius monotonicity") {
  const auto cloud = random_cloud(60, 2, 5);
  const auto rows = all_rows(60);
  Rng rng(8);
  for (int trial = 0; trial < 12; ++trial) {
    const double eps = 0.02 + 0.5 * rng.uniform();
    const auto [small, big] = compute_degree_pair(cloud, {}, eps, rows);
    for (std::size_t k = 0; k < rows.size(); ++k)
      CHECK(small.degrees[k] <= big.degrees[k]);
    // the pair matches independent single-radius calls
    CHECK(small.degrees == compute_degrees(cloud, {}, eps, rows).degrees);
    CHECK(big.degrees == compute_degrees(cloud, {}, 2 * eps, rows).degrees);
  }
}

TEST_CASE("scale invariance of degree counts") {
  const auto cloud = random_cloud(50, 3, 21);
  const auto rows = all_rows(50);
  const double eps = 0.37;
  const auto base = compute_degrees(cloud, {}, eps, rows);
  for (const double sigma : {2.0, 0.25, 3.7, 1e-3}) {
    PointCloud scaled = cloud;
    for (auto& c : scaled.coords) c *= sigma;
    const auto got = compute_degrees(scaled, {}, sigma * eps, rows);
    CHECK(got.degrees == base.degrees);
  }
}

TEST_CASE("permutation equivariance") {
  const auto cloud = random_cloud(30, 2, 33);
  Rng rng(34);
  auto perm = sample_without_replacement(30, 30, rng);
  PointCloud shuffled = cloud;
  for (std::size_t i = 0; i < 30; ++i)
    for (int k = 0; k < cloud.dim; ++k)
      shuffled.row(perm[i])[k] = cloud.point(i)[k];

  const auto rows = all_rows(30);
  std::vector<std::uint32_t> mapped(30);
  for (std::size_t i = 0; i < 30; ++i) mapped[i] = perm[i];
  const auto base = compute_degrees(cloud, {}, 0.4, rows);
  const auto moved = compute_degrees(shuffled, {}, 0.4, mapped);
  CHECK(base.degrees == moved.degrees);
}

TEST_CASE("thread count does not change results") {
  const auto cloud = random_cloud(200, 3, 55);
  const auto rows = all_rows(200);
  const auto a = compute_degrees(cloud, {}, 0.3, rows, 1);
  const auto b = compute_degrees(cloud, {}, 0.3, rows, 4);
  CHECK(a.degrees == b.degrees);
  CHECK(correlation_integral(cloud, {}, 0.3, 1) ==
        correlation_integral(cloud, {}, 0.3, 4));
}

TEST_CASE("errors: bad rows and radius") {
  const auto cloud = random_cloud(5, 2, 1);
  const std::vector<std::uint32_t> bad{7};
  CHECK_THROWS_AS(compute_degrees(cloud, {}, 0.5, bad), Error);
  const std::vector<std::uint32_t> rows{0};
  CHECK_THROWS_AS(compute_degrees(cloud, {}, 0.0, rows), Error);
  CHECK_THROWS_AS(compute_degrees(cloud, {}, -1.0, rows), Error);
}

TEST_CASE("correlation integral: identical points and empty graph") {
  PointCloud dup({1.0, 2.0, 1.0, 2.0, 1.0, 2.0}, 2);
  CHECK(correlation_integral(dup, {}, 0.5) == 1.0);
  const auto cloud = random_cloud(20, 2, 9);
  CHECK(correlation_integral(cloud, {}, 1e-12) == 0.0);
}

TEST_CASE("correlation integral equals estimate_p1 with m = n bit for bit") {
  for (const std::uint64_t seed : {100u, 101u, 102u, 103u}) {
    const auto cloud = random_cloud(37, 2, seed);
    const auto rows = all_rows(37);
    const double eps = 0.25;
    const auto p = estimate_p1(compute_degrees(cloud, {}, eps, rows));
    CHECK(p.value == correlation_integral(cloud, {}, eps));
  }
}

TEST_CASE("correlation integral nondecreasing in the radius") {
  const auto cloud = random_cloud(80, 2, 44);
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double c = correlation_integral(cloud, {}, 0.05 * i);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("kegl dimension") {
  const auto cloud = random_cloud(200, 2, 66);
  const double e1 = 0.1;
  // eps2 = 2 eps1 reduces to the explicit two-scale estimator
  const auto rows = all_rows(200);
  const auto p1 = estimate_p1(compute_degrees(cloud, {}, e1, rows));
  const auto p2 = estimate_p1(compute_degrees(cloud, {}, 2 * e1, rows));
  const double via_explicit = explicit_dimension(p1, p2);
  CHECK(kegl_dimension(cloud, {}, e1, 2 * e1) ==
        doctest::Approx(via_explicit).epsilon(1e-12));

  // equal correlation integrals give 0
  PointCloud dup({0.0, 0.0, 0.0, 0.0}, 2);
  bool saturated = false;
  CHECK(kegl_dimension(dup, {}, 0.5, 1.0, &saturated) == 0.0);
  CHECK(saturated);

  CHECK_THROWS_AS(kegl_dimension(cloud, {}, 1e-13, 2e-13), Error);
}

TEST_CASE("kegl near 1 for a segment in 3D") {
  // uniform points on a unit segment embedded in 3D
  Rng rng(123);
  std::vector<double> coords;
  const std::size_t n = 1000;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.uniform();
    coords.push_back(t);
    coords.push_back(2.0 + 0.0 * t);
    coords.push_back(-1.0);
  }
  PointCloud cloud(std::move(coords), 3);
  const double v = kegl_dimension(cloud, {}, 0.05, 0.1);
  CHECK(std::fabs(v - 1.0) < 0.25);
}

TEST_CASE("default epsilon") {
  // pooled sd exactly 1: two coordinates at +-1 ... build n=53 points in 1D
  // with sample sd 1 by construction
  {
    std::vector<double> coords(53);
    for (int i = 0; i < 53; ++i) coords[i] = (i % 2 == 0) ? 1.0 : -1.0;
    PointCloud cloud(std::move(coords), 1);
    const double sd = pooled_coordinate_sd(cloud);
    const double expected = sd / std::sqrt(std::log(54.0));
    CHECK(default_epsilon(cloud) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(expected / sd == doctest::Approx(0.50069).epsilon(1e-3));
  }
  // scaling the cloud by c scales epsilon by exactly c (power of two)
  {
    const auto cloud = random_cloud(64, 2, 3);
    PointCloud scaled = cloud;
    for (auto& c : scaled.coords) c *= 4.0;
    CHECK(default_epsilon(scaled) == 4.0 * default_epsilon(cloud));
  }
  // degenerate cloud
  PointCloud flat({2.0, 2.0, 2.0}, 1);
  CHECK_THROWS_AS(default_epsilon(flat), Error);
}

TEST_CASE("euclidean metric axioms on random triples") {
  Rng rng(271828);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform_int(5));
    std::vector<double> a(dim), b(dim), c(dim);
    for (int k = 0; k < dim; ++k) {
      a[k] = 10.0 * (rng.uniform() - 0.5);
      b[k] = 10.0 * (rng.uniform() - 0.5);
      c[k] = 10.0 * (rng.uniform() - 0.5);
    }
    const double ab = std::sqrt(squared_distance(a, b));
    const double ba = std::sqrt(squared_distance(b, a));
    const double ac = std::sqrt(squared_distance(a, c));
    const double cb = std::sqrt(squared_distance(c, b));
    CHECK(ab == ba);
    CHECK(ab >= 0.0);
    CHECK(squared_distance(a, a) == 0.0);
    CHECK(ab <= ac + cb + 1e-12);
  }
  // zero iff identical
  std::vector<double> x{1.0, 2.0}, y{1.0, 2.0000001};
  CHECK(squared_distance(x, y) > 0.0);
}

TEST_CASE("default epsilon on a sierpinski cloud matches recomputation") {
  const auto cloud = sierpinski(2560, 100, 7);
  // independent spreadsheet-style recomputation
  double mean = 0.0;
  for (const double c : cloud.coords) mean += c;
  mean /= cloud.coords.size();
  double ss = 0.0;
  for (const double c : cloud.coords) ss += (c - mean) * (c - mean);
  const double sd = std::sqrt(ss / (cloud.coords.size() - 1));
  CHECK(default_epsilon(cloud) ==
        doctest::Approx(sd / std::sqrt(std::log(2561.0))).epsilon(1e-14));
}
