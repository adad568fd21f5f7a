#pragma once

#include <cstddef>
#include <functional>

namespace forge {

  // Worker count: FORGE_THREADS when set to a positive integer, otherwise the
  // hardware concurrency.
  std::size_t thread_count();

  // Runs body(i) for i in [0, n) over contiguous blocks. Callers write results
  // into per-index slots, so the outcome never depends on scheduling. The
  // first exception thrown by any body is rethrown.
  void parallel_for(std::size_t n, std::function<void(std::size_t)> const& body);

}  // namespace forge
