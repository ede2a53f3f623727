#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace supcon {

/// Global cap on worker threads (0 restores the hardware default).
void set_max_threads(unsigned count);
unsigned max_threads();

/// Runs body(i) for i in [0, n) over at most max_threads() workers in
/// contiguous chunks. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t min_chunk = 64);

}  // namespace supcon
