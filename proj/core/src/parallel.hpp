#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace choicematch::detail {

/// Smallest i in [0, count) with pred(i), or nullopt. With jobs > 1 the
/// range is striped across threads; each thread stops once it passes the
/// best index found so far, so the answer equals the sequential one.
template <typename Pred>
std::optional<std::uint64_t> parallel_first(std::uint64_t count, unsigned jobs, Pred&& pred) {
  if (jobs <= 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) {
      if (pred(i)) return i;
    }
    return std::nullopt;
  }
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, count));
  std::atomic<std::uint64_t> best{count};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::uint64_t i = t; i < count && i < best.load(std::memory_order_relaxed);
             i += jobs) {
          if (pred(i)) {
            std::uint64_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return;
          }
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        best.store(0);
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  const std::uint64_t b = best.load();
  if (b >= count) return std::nullopt;
  return b;
}

/// Runs fn(begin, end) over `jobs` contiguous chunks of [0, count) and
/// returns the per-chunk results in chunk order.
template <typename Fn>
auto parallel_chunks(std::uint64_t count, unsigned jobs, Fn&& fn)
    -> std::vector<decltype(fn(std::uint64_t{}, std::uint64_t{}))> {
  using R = decltype(fn(std::uint64_t{}, std::uint64_t{}));
  jobs = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(jobs, count ? count : 1)));
  std::vector<R> results(jobs);
  if (jobs == 1) {
    results[0] = fn(0, count);
    return results;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    const std::uint64_t begin = count * t / jobs;
    const std::uint64_t end = count * (t + 1) / jobs;
    pool.emplace_back([&, t, begin, end] {
      try {
        results[t] = fn(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace choicematch::detail
