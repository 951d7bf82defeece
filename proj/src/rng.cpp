#include "rcdim/rng.hpp"

#include <algorithm>
#include <unordered_set>

#include "rcdim/errors.hpp"

namespace rcdim {

std::vector<std::uint32_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k,
                                                      Rng& rng) {
  if (k > n) fail(ErrorCode::InvalidParameter, "sample size exceeds population");
  std::vector<std::uint32_t> out;
  out.reserve(k);
  std::unordered_set<std::uint32_t> seen;
  seen.reserve(2 * k);
  for (std::size_t j = n - k; j < n; ++j) {
    const auto t = static_cast<std::uint32_t>(rng.uniform_int(j + 1));
    if (seen.insert(t).second) {
      out.push_back(t);
    } else {
      out.push_back(static_cast<std::uint32_t>(j));
      seen.insert(static_cast<std::uint32_t>(j));
    }
  }
  for (std::size_t i = k; i > 1; --i) {
    const std::size_t j = rng.uniform_int(i);
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

}  // namespace rcdim
