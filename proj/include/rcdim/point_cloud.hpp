#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rcdim {

/// Design points stored row-major, n x dim.
struct PointCloud {
  std::vector<double> coords;
  int dim = 0;

  PointCloud() = default;
  PointCloud(std::vector<double> flat, int dimension)
      : coords(std::move(flat)), dim(dimension) {}

  std::size_t size() const {
    return dim > 0 ? coords.size() / static_cast<std::size_t>(dim) : 0;
  }

  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }

  double* row(std::size_t i) {
    return coords.data() + i * static_cast<std::size_t>(dim);
  }

  /// Throws unless dim >= 1, coords.size() is a multiple of dim, and every
  /// coordinate is finite.
  void validate() const;
};

enum class Metric { Euclidean };

struct MetricSpec {
  Metric kind = Metric::Euclidean;
};

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

}  // namespace rcdim
