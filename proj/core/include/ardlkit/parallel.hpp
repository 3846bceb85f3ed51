#pragma once

#include <cstddef>
#include <functional>

namespace ardlkit {

/// Runs fn(0..count-1) on up to `jobs` threads (jobs <= 1 runs inline).
/// Indices are split into contiguous blocks, so any per-index output is
/// independent of scheduling. The first exception thrown is rethrown after all
/// workers finish.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace ardlkit
