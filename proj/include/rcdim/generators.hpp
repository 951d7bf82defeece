#pragma once

#include <cstdint>

#include "rcdim/point_cloud.hpp"

namespace rcdim {

/// Uniform draws from the Sierpinski carpet on [-1/2, 1/2]^2: the 8-map
/// base-3 digit expansion truncated at `depth` terms (default 100).
PointCloud sierpinski(std::size_t n, int depth, std::uint64_t seed,
                      int threads = 0);

/// i.i.d. N_d(0, I).
PointCloud gaussian_iso(std::size_t n, int d, std::uint64_t seed,
                        int threads = 0);

/// N_5 with the first s coordinates at sd 1 and the remaining 5-s at
/// sd 1/sqrt(snr).
PointCloud anisotropic_gaussian(std::size_t n, int s, double snr,
                                std::uint64_t seed, int threads = 0);

/// Uniform on [0,1]^d (unscaled).
PointCloud uniform_cube_cloud(std::size_t n, int d, std::uint64_t seed,
                              int threads = 0);

/// Uniform on the unit sphere S^{d_intrinsic} in R^{d_intrinsic + 1}.
PointCloud uniform_sphere(std::size_t n, int d_intrinsic, std::uint64_t seed,
                          int threads = 0);

/// (cos t, sin t, t / 2pi), t uniform on [0, 4pi], rescaled to pooled
/// coordinate sd 1.
PointCloud helix(std::size_t n, std::uint64_t seed, int threads = 0);

/// (t cos t, h, t sin t), t uniform on [3pi/2, 9pi/2], h uniform on
/// [0, 20], rescaled to pooled coordinate sd 1.
PointCloud swiss_roll(std::size_t n, std::uint64_t seed, int threads = 0);

/// Torus with angles drawn uniformly plus isotropic Gaussian noise of
/// sd sigma.
PointCloud noisy_torus(std::size_t n, double R, double r_tube, double sigma,
                       std::uint64_t seed, int threads = 0);

constexpr int kSierpinskiDefaultDepth = 100;

}  // namespace rcdim
