#include "forge/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace forge {

  std::size_t thread_count() {
    if (char const* env = std::getenv("FORGE_THREADS")) {
      try {
        long const v = std::stol(env);
        if (v > 0) {
          return static_cast<std::size_t>(v);
        }
      } catch (std::exception const&) {
      }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }

  void parallel_for(std::size_t n, std::function<void(std::size_t)> const& body) {
    std::size_t const workers = std::min(thread_count(), n);
    if (workers <= 1) {
      for (std::size_t i = 0; i < n; ++i) {
        body(i);
      }
      return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    std::size_t const chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t const lo = w * chunk;
      std::size_t const hi = std::min(n, lo + chunk);
      if (lo >= hi) {
        break;
      }
      threads.emplace_back([&, lo, hi] {
        try {
          for (std::size_t i = lo; i < hi; ++i) {
            body(i);
          }
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) {
            error = std::current_exception();
          }
        }
      });
    }
    threads.clear();
    if (error) {
      std::rethrow_exception(error);
    }
  }

}  // namespace forge
