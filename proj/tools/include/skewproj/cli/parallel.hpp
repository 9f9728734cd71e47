#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace skewproj::cli {

// Evaluates fn(t) for t in [0, n) on a pool of threads and returns the results
// in trial order, so the output never depends on scheduling.
template <typename T, typename Fn>
std::vector<T> run_trials(std::uint64_t n, unsigned threads, Fn fn) {
  std::vector<T> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(n, 1)));
  constexpr std::uint64_t chunk = 256;
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t begin = next.fetch_add(chunk);
        if (begin >= n) return;
        const std::uint64_t end = std::min(n, begin + chunk);
        for (std::uint64_t t = begin; t < end; ++t) out[t] = fn(t);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace skewproj::cli
