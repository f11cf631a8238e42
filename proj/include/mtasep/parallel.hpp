#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mtasep {

// Worker count: MTASEP_THREADS when set, otherwise 1. Sweep items write
// to their own result slots, so thread count never changes the output.
inline int default_thread_count() {
  if (const char* env = std::getenv("MTASEP_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         int threads = default_thread_count()) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const auto worker = [&](std::size_t start) {
    for (std::size_t i = start; i < count; i += static_cast<std::size_t>(threads)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  for (int k = 0; k < threads; ++k) pool.emplace_back(worker, static_cast<std::size_t>(k));
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace mtasep
