#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace rcdim {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ seeded through splitmix64. Substreams are derived by
/// mixing (seed, stream_id) so chunked parallel work can hand each chunk
/// its own generator and stay independent of the worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed, 0); }
  Rng(std::uint64_t seed, std::uint64_t stream_id) { reseed(seed, stream_id); }

  static Rng substream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(seed, stream_id);
  }

  void reseed(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t sm = seed;
    sm ^= stream_id * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    for (auto& w : state_) w = splitmix64_next(sm);
    has_spare_ = false;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Unbiased integer in [0, bound), bound >= 1.
  std::uint64_t uniform_int(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double exponential() { return -std::log(uniform_open()); }

  double cauchy() {
    return std::tan(3.14159265358979323846 * (uniform() - 0.5));
  }

  /// Beta(2,5) via the two-gamma construction with integer shapes.
  double beta_2_5() {
    const double g2 = exponential() + exponential();
    double g5 = 0.0;
    for (int i = 0; i < 5; ++i) g5 += exponential();
    return g2 / (g2 + g5);
  }

  /// Chi-squared with integer dof as a sum of squared normals.
  double chi_squared(int dof) {
    double s = 0.0;
    for (int i = 0; i < dof; ++i) {
      const double z = normal();
      s += z * z;
    }
    return s;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// k distinct indices from [0, n), order randomized (Floyd's sampling
/// followed by a Fisher-Yates shuffle of the selection).
std::vector<std::uint32_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k, Rng& rng);

}  // namespace rcdim
