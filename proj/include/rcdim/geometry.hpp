#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rcdim/point_cloud.hpp"

namespace rcdim {

/// Per-row neighbour counts at one radius. degrees[k] counts the points j
/// with r(x_rows[k], x_j) <= radius, j != rows[k]; ties at the boundary
/// count as edges.
struct DegreeProfile {
  double radius = 0.0;
  std::size_t n = 0;
  std::vector<std::uint32_t> sampled_rows;
  std::vector<std::uint32_t> degrees;
};

struct AdjacencyRows {
  double radius = 0.0;
  std::size_t n = 0;
  std::vector<std::uint32_t> sampled_rows;
  std::vector<std::vector<std::uint32_t>> rows;  // sorted ascending
};

DegreeProfile compute_degrees(const PointCloud& cloud, MetricSpec metric,
                              double radius,
                              std::span<const std::uint32_t> rows,
                              int threads = 0);

/// Degrees at radius and 2*radius for the same rows in one pass.
/// Nested balls guarantee pair.first.degrees <= pair.second.degrees.
std::pair<DegreeProfile, DegreeProfile> compute_degree_pair(
    const PointCloud& cloud, MetricSpec metric, double radius,
    std::span<const std::uint32_t> rows, int threads = 0);

AdjacencyRows compute_adjacency_rows(const PointCloud& cloud,
                                     MetricSpec metric, double radius,
                                     std::span<const std::uint32_t> rows,
                                     int threads = 0);

/// (2 / n(n-1)) * #{ i<j : r(x_i, x_j) <= radius }.
double correlation_integral(const PointCloud& cloud, MetricSpec metric,
                            double radius, int threads = 0);

/// Kegl's scale-dependent correlation dimension
/// (log C(eps2) - log C(eps1)) / (log eps2 - log eps1); requires both
/// correlation integrals strictly positive. When both equal 1 the value is
/// a vacuous 0 and *saturated is set.
double kegl_dimension(const PointCloud& cloud, MetricSpec metric, double eps1,
                      double eps2, bool* saturated = nullptr, int threads = 0);

/// Pooled sample standard deviation of all n*dim coordinates divided by
/// sqrt(log(n+1)), natural log.
double default_epsilon(const PointCloud& cloud);

double pooled_coordinate_sd(const PointCloud& cloud);

}  // namespace rcdim
