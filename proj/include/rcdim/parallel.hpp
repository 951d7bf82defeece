#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace rcdim {

/// Worker count resolution: explicit value if > 0, else RCDIM_THREADS from
/// the environment, else hardware concurrency.
int resolve_threads(int requested);

/// Runs fn(chunk_index) for chunk_index in [0, n_chunks) across workers.
/// Chunks are claimed from an atomic counter; every chunk writes only to
/// its own slot, so output is identical for any worker count.
void parallel_chunks(std::size_t n_chunks, int threads,
                     const std::function<void(std::size_t)>& fn);

constexpr std::size_t kMcChunk = 65536;

}  // namespace rcdim
