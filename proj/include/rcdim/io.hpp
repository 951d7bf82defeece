#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rcdim/point_cloud.hpp"

namespace rcdim {

/// One point per row, comma-separated decimal floats, no header.
/// Values are written with 17 significant digits and round-trip exactly.
void write_point_csv(const std::string& path, const PointCloud& cloud);

PointCloud read_point_csv(const std::string& path);

/// Undirected graph given as an edge list: first line "n <count>", then
/// one "i j" pair per line, 0-based, i < j, no duplicates.
struct EdgeListGraph {
  std::size_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // sorted

  std::vector<std::uint32_t> degrees() const;
};

EdgeListGraph read_edge_list(const std::string& path);
void write_edge_list(const std::string& path, const EdgeListGraph& graph);

/// Builds the edge list of a cloud at one radius (test/export helper).
EdgeListGraph edges_from_cloud(const PointCloud& cloud, MetricSpec metric,
                               double radius, int threads = 0);

/// Hard NestednessViolation unless edges at the smaller label are a subset
/// of the edges at the larger label (and vertex counts agree).
void validate_nested(const EdgeListGraph& at_eps,
                     const EdgeListGraph& at_2eps);

std::string format_double17(double v);

}  // namespace rcdim
