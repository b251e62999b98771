#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace l1cert {

// Worker count: explicit setting, else L1CERT_THREADS, else hardware concurrency.
inline int& thread_setting() {
  static int threads = 0;
  return threads;
}

inline void set_threads(int threads) { thread_setting() = std::max(0, threads); }

inline int worker_count() {
  if (thread_setting() > 0) return thread_setting();
  if (const char* env = std::getenv("L1CERT_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

inline bool& in_parallel_region() {
  thread_local bool inside = false;
  return inside;
}

// Runs body(i) for i in [0, count) on a small work pool. The first exception
// thrown by any body is rethrown after all workers stop. Nested calls run
// serially on the calling worker.
template <class Body>
void parallel_for(long count, Body&& body) {
  const long workers = in_parallel_region() ? 1 : std::min<long>(worker_count(), count);
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    const bool outer = in_parallel_region();
    in_parallel_region() = true;
    struct Reset {
      bool value;
      ~Reset() { in_parallel_region() = value; }
    } reset{outer};
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (long t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace l1cert
