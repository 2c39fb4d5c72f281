#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace g2fk {

namespace detail {
inline std::atomic<unsigned>& jobs_setting() {
  static std::atomic<unsigned> jobs{1};
  return jobs;
}
}  // namespace detail

/// Worker count used by the exhaustive scans. 0 selects hardware concurrency.
inline void set_jobs(unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  detail::jobs_setting() = jobs;
}
inline unsigned jobs() { return detail::jobs_setting(); }

/// Splits [0, n) into one contiguous chunk per worker and calls
/// body(begin, end, worker). Chunk boundaries depend only on n and the worker
/// count, so per-worker partial results reduce deterministically.
template <class Body>
void parallel_chunks(std::size_t n, Body&& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs(), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    body(std::size_t{0}, n, 0u);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t step = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t b = std::min(n, w * step);
    const std::size_t e = std::min(n, b + step);
    pool.emplace_back([&, b, e, w] {
      try {
        body(b, e, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

inline unsigned worker_count(std::size_t n) {
  return static_cast<unsigned>(std::min<std::size_t>(jobs(), std::max<std::size_t>(n, 1)));
}

}  // namespace g2fk
