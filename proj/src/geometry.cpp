#include "rcdim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rcdim/errors.hpp"
#include "rcdim/parallel.hpp"

namespace rcdim {
namespace {

void check_inputs(const PointCloud& cloud, double radius,
                  std::span<const std::uint32_t> rows) {
  const std::size_t n = cloud.size();
  if (n < 2) fail(ErrorCode::DegenerateCloud, "need at least 2 points");
  if (!(radius > 0.0) || !std::isfinite(radius))
    fail(ErrorCode::InvalidRadius, "radius must be positive and finite");
  for (const auto r : rows) {
    if (r >= n)
      fail(ErrorCode::IndexOutOfRange,
           "row index " + std::to_string(r) + " out of range for n=" +
               std::to_string(n));
  }
}

}  // namespace

void PointCloud::validate() const {
  if (dim < 1) fail(ErrorCode::InvalidParameter, "ambient dimension must be >= 1");
  if (coords.size() % static_cast<std::size_t>(dim) != 0)
    fail(ErrorCode::InvalidParameter, "coordinate buffer not a multiple of dim");
  for (const double c : coords) {
    if (!std::isfinite(c))
      fail(ErrorCode::InvalidParameter, "non-finite coordinate in cloud");
  }
}

DegreeProfile compute_degrees(const PointCloud& cloud, MetricSpec metric,
                              double radius,
                              std::span<const std::uint32_t> rows,
                              int threads) {
  (void)metric;
  check_inputs(cloud, radius, rows);
  const std::size_t n = cloud.size();
  const double r2 = radius * radius;

  DegreeProfile out;
  out.radius = radius;
  out.n = n;
  out.sampled_rows.assign(rows.begin(), rows.end());
  out.degrees.assign(rows.size(), 0);

  parallel_chunks(rows.size(), threads, [&](std::size_t k) {
    const auto i = rows[k];
    const auto pi = cloud.point(i);
    std::uint32_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (squared_distance(pi, cloud.point(j)) <= r2) ++count;
    }
    out.degrees[k] = count;
  });
  return out;
}

std::pair<DegreeProfile, DegreeProfile> compute_degree_pair(
    const PointCloud& cloud, MetricSpec metric, double radius,
    std::span<const std::uint32_t> rows, int threads) {
  (void)metric;
  check_inputs(cloud, radius, rows);
  const std::size_t n = cloud.size();
  const double r2 = radius * radius;
  const double radius2 = 2.0 * radius;
  const double r2big = radius2 * radius2;

  DegreeProfile small;
  small.radius = radius;
  small.n = n;
  small.sampled_rows.assign(rows.begin(), rows.end());
  small.degrees.assign(rows.size(), 0);
  DegreeProfile big = small;
  big.radius = radius2;

  parallel_chunks(rows.size(), threads, [&](std::size_t k) {
    const auto i = rows[k];
    const auto pi = cloud.point(i);
    std::uint32_t c_small = 0, c_big = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d2 = squared_distance(pi, cloud.point(j));
      if (d2 <= r2big) {
        ++c_big;
        if (d2 <= r2) ++c_small;
      }
    }
    small.degrees[k] = c_small;
    big.degrees[k] = c_big;
  });
  return {std::move(small), std::move(big)};
}

AdjacencyRows compute_adjacency_rows(const PointCloud& cloud,
                                     MetricSpec metric, double radius,
                                     std::span<const std::uint32_t> rows,
                                     int threads) {
  (void)metric;
  check_inputs(cloud, radius, rows);
  const std::size_t n = cloud.size();
  const double r2 = radius * radius;

  AdjacencyRows out;
  out.radius = radius;
  out.n = n;
  out.sampled_rows.assign(rows.begin(), rows.end());
  out.rows.resize(rows.size());

  parallel_chunks(rows.size(), threads, [&](std::size_t k) {
    const auto i = rows[k];
    const auto pi = cloud.point(i);
    auto& list = out.rows[k];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (squared_distance(pi, cloud.point(j)) <= r2)
        list.push_back(static_cast<std::uint32_t>(j));
    }
  });
  return out;
}

double correlation_integral(const PointCloud& cloud, MetricSpec metric,
                            double radius, int threads) {
  (void)metric;
  const std::size_t n = cloud.size();
  if (n < 2) fail(ErrorCode::DegenerateCloud, "need at least 2 points");
  if (!(radius > 0.0) || !std::isfinite(radius))
    fail(ErrorCode::InvalidRadius, "radius must be positive and finite");
  const double r2 = radius * radius;

  const std::size_t chunk = 256;
  const std::size_t n_chunks = (n + chunk - 1) / chunk;
  std::vector<std::uint64_t> partial(n_chunks, 0);
  parallel_chunks(n_chunks, threads, [&](std::size_t c) {
    const std::size_t lo = c * chunk;
    const std::size_t hi = std::min(lo + chunk, n);
    std::uint64_t count = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto pi = cloud.point(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        if (squared_distance(pi, cloud.point(j)) <= r2) ++count;
      }
    }
    partial[c] = count;
  });
  std::uint64_t pairs = 0;
  for (const auto c : partial) pairs += c;
  return 2.0 * static_cast<double>(pairs) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

double kegl_dimension(const PointCloud& cloud, MetricSpec metric, double eps1,
                      double eps2, bool* saturated, int threads) {
  if (!(eps1 > 0.0) || !(eps2 > eps1))
    fail(ErrorCode::InvalidRadius, "need 0 < eps1 < eps2");
  if (saturated) *saturated = false;
  const double c1 = correlation_integral(cloud, metric, eps1, threads);
  const double c2 = correlation_integral(cloud, metric, eps2, threads);
  if (c1 == 0.0 || c2 == 0.0)
    fail(ErrorCode::DegenerateGraph,
         "correlation integral vanishes at a requested radius");
  if (c1 == 1.0 && c2 == 1.0 && saturated) *saturated = true;
  return (std::log(c2) - std::log(c1)) / (std::log(eps2) - std::log(eps1));
}

double pooled_coordinate_sd(const PointCloud& cloud) {
  const std::size_t count = cloud.coords.size();
  if (count < 2) fail(ErrorCode::DegenerateCloud, "not enough coordinates");
  double mean = 0.0;
  for (const double c : cloud.coords) mean += c;
  mean /= static_cast<double>(count);
  double ss = 0.0;
  for (const double c : cloud.coords) {
    const double d = c - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(count - 1));
}

double default_epsilon(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  if (n < 2) fail(ErrorCode::DegenerateCloud, "need at least 2 points");
  const double sd = pooled_coordinate_sd(cloud);
  if (sd == 0.0)
    fail(ErrorCode::DegenerateCloud, "pooled coordinate sd is zero");
  return sd / std::sqrt(std::log(static_cast<double>(n) + 1.0));
}

}  // namespace rcdim
