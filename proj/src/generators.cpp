#include "rcdim/generators.hpp"

#include <cmath>

#include "rcdim/errors.hpp"
#include "rcdim/geometry.hpp"
#include "rcdim/parallel.hpp"
#include "rcdim/rng.hpp"

namespace rcdim {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kGenChunk = 65536;

// Stream-id salts so different generators never share substreams.
constexpr std::uint64_t kSierpStream = 0x5e110000u;
constexpr std::uint64_t kGaussStream = 0x6a550000u;
constexpr std::uint64_t kAnisoStream = 0xa1150000u;
constexpr std::uint64_t kCubeStream = 0xcb3e0000u;
constexpr std::uint64_t kSphereStream = 0x59e3e000u;
constexpr std::uint64_t kHelixStream = 0x3e11c000u;
constexpr std::uint64_t kSwissStream = 0x55110000u;
constexpr std::uint64_t kTorusStream = 0x70b50000u;

void check_n(std::size_t n) {
  if (n < 1) fail(ErrorCode::InvalidCount, "point count must be >= 1");
}

/// Fills the cloud chunk by chunk; fn(rng, row_pointer) writes one point.
template <typename Fn>
PointCloud generate(std::size_t n, int dim, std::uint64_t seed,
                    std::uint64_t stream_salt, int threads, Fn&& fn) {
  PointCloud cloud(std::vector<double>(n * static_cast<std::size_t>(dim)),
                   dim);
  const std::size_t n_chunks = (n + kGenChunk - 1) / kGenChunk;
  parallel_chunks(n_chunks, threads, [&](std::size_t c) {
    Rng rng(seed, stream_salt + c);
    const std::size_t lo = c * kGenChunk;
    const std::size_t hi = std::min(lo + kGenChunk, n);
    for (std::size_t i = lo; i < hi; ++i) fn(rng, cloud.row(i));
  });
  return cloud;
}

void standardize_pooled_sd(PointCloud& cloud) {
  const double sd = pooled_coordinate_sd(cloud);
  if (sd <= 0.0) fail(ErrorCode::DegenerateCloud, "degenerate generator output");
  const double inv = 1.0 / sd;
  for (auto& c : cloud.coords) c *= inv;
}

// Column k of the carpet map matrix: the 8 subsquare centers (times 3)
// of [-1/2,1/2]^2 with the middle square removed.
constexpr double kCarpetX[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr double kCarpetY[8] = {1, 1, 0, -1, -1, -1, 0, 1};

}  // namespace

PointCloud sierpinski(std::size_t n, int depth, std::uint64_t seed,
                      int threads) {
  check_n(n);
  if (depth < 1) fail(ErrorCode::InvalidParameter, "depth must be >= 1");
  return generate(n, 2, seed, kSierpStream, threads,
                  [depth](Rng& rng, double* p) {
                    // Smallest terms first so the truncation error stays at
                    // the last digit.
                    std::uint32_t digits[128];
                    double x = 0.0, y = 0.0;
                    int use = depth > 128 ? 128 : depth;
                    // Draw in forward order to keep the stream layout
                    // independent of summation order.
                    for (int j = 0; j < use; ++j)
                      digits[j] = static_cast<std::uint32_t>(rng.uniform_int(8));
                    for (int j = depth; j > use; --j) rng.uniform_int(8);
                    double w = std::pow(3.0, -use);
                    for (int j = use - 1; j >= 0; --j) {
                      x += w * kCarpetX[digits[j]];
                      y += w * kCarpetY[digits[j]];
                      w *= 3.0;
                    }
                    p[0] = x;
                    p[1] = y;
                  });
}

PointCloud gaussian_iso(std::size_t n, int d, std::uint64_t seed,
                        int threads) {
  check_n(n);
  if (d < 1) fail(ErrorCode::InvalidParameter, "dimension must be >= 1");
  return generate(n, d, seed, kGaussStream, threads, [d](Rng& rng, double* p) {
    for (int k = 0; k < d; ++k) p[k] = rng.normal();
  });
}

PointCloud anisotropic_gaussian(std::size_t n, int s, double snr,
                                std::uint64_t seed, int threads) {
  check_n(n);
  if (s < 1 || s > 5)
    fail(ErrorCode::InvalidParameter, "signal dimension s must be in 1..5");
  if (!(snr > 0.0)) fail(ErrorCode::InvalidParameter, "snr must be positive");
  const double noise_sd = 1.0 / std::sqrt(snr);
  return generate(n, 5, seed, kAnisoStream, threads,
                  [s, noise_sd](Rng& rng, double* p) {
                    for (int k = 0; k < 5; ++k) {
                      const double z = rng.normal();
                      p[k] = k < s ? z : noise_sd * z;
                    }
                  });
}

PointCloud uniform_cube_cloud(std::size_t n, int d, std::uint64_t seed,
                              int threads) {
  check_n(n);
  if (d < 1) fail(ErrorCode::InvalidParameter, "dimension must be >= 1");
  return generate(n, d, seed, kCubeStream, threads, [d](Rng& rng, double* p) {
    for (int k = 0; k < d; ++k) p[k] = rng.uniform();
  });
}

PointCloud uniform_sphere(std::size_t n, int d_intrinsic, std::uint64_t seed,
                          int threads) {
  check_n(n);
  if (d_intrinsic < 1)
    fail(ErrorCode::InvalidParameter, "intrinsic dimension must be >= 1");
  const int dim = d_intrinsic + 1;
  return generate(n, dim, seed, kSphereStream, threads,
                  [dim](Rng& rng, double* p) {
                    double norm2 = 0.0;
                    do {
                      norm2 = 0.0;
                      for (int k = 0; k < dim; ++k) {
                        p[k] = rng.normal();
                        norm2 += p[k] * p[k];
                      }
                    } while (norm2 == 0.0);
                    const double inv = 1.0 / std::sqrt(norm2);
                    for (int k = 0; k < dim; ++k) p[k] *= inv;
                  });
}

PointCloud helix(std::size_t n, std::uint64_t seed, int threads) {
  check_n(n);
  PointCloud cloud =
      generate(n, 3, seed, kHelixStream, threads, [](Rng& rng, double* p) {
        const double t = 4.0 * kPi * rng.uniform();
        p[0] = std::cos(t);
        p[1] = std::sin(t);
        p[2] = t / (2.0 * kPi);
      });
  standardize_pooled_sd(cloud);
  return cloud;
}

PointCloud swiss_roll(std::size_t n, std::uint64_t seed, int threads) {
  check_n(n);
  PointCloud cloud =
      generate(n, 3, seed, kSwissStream, threads, [](Rng& rng, double* p) {
        const double t = kPi * (1.5 + 3.0 * rng.uniform());
        const double h = 20.0 * rng.uniform();
        p[0] = t * std::cos(t);
        p[1] = h;
        p[2] = t * std::sin(t);
      });
  standardize_pooled_sd(cloud);
  return cloud;
}

PointCloud noisy_torus(std::size_t n, double R, double r_tube, double sigma,
                       std::uint64_t seed, int threads) {
  check_n(n);
  if (!(R > 0.0) || !(r_tube > 0.0))
    fail(ErrorCode::InvalidParameter, "torus radii must be positive");
  if (sigma < 0.0)
    fail(ErrorCode::InvalidParameter, "noise sd must be nonnegative");
  return generate(n, 3, seed, kTorusStream, threads,
                  [R, r_tube, sigma](Rng& rng, double* p) {
                    const double theta = 2.0 * kPi * rng.uniform();
                    const double phi = 2.0 * kPi * rng.uniform();
                    const double ring = R + r_tube * std::cos(phi);
                    p[0] = ring * std::cos(theta);
                    p[1] = ring * std::sin(theta);
                    p[2] = r_tube * std::sin(phi);
                    if (sigma > 0.0) {
                      p[0] += sigma * rng.normal();
                      p[1] += sigma * rng.normal();
                      p[2] += sigma * rng.normal();
                    }
                  });
}

}  // namespace rcdim
