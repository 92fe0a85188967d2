#ifndef ADISK_PARALLEL_HPP
#define ADISK_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace adisk {

/// Worker-pool size used by parallel_for. 0 means hardware concurrency.
void set_worker_count(int workers);
int worker_count();

/// Runs fn(i) for i in [0, n). Results must be written to per-index slots;
/// the partition of indices over threads never affects the output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace adisk

#endif  // ADISK_PARALLEL_HPP
