#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace sephash::detail {

inline std::size_t resolve_threads(std::size_t requested) {
  if (requested) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs `scan(item, local)` over items 0..count-1 on a worker pool and returns
/// the hit of the lowest item that produced one. Items are handed out in
/// increasing order; once a hit is known, items above it are skipped, so the
/// answer matches a sequential scan whatever the worker count. Per-worker
/// `Local` accumulators are merged with `merge(total, local)`.
template <class Result, class Local, class Scan, class Merge>
std::optional<Result> first_hit(std::size_t count, std::size_t threads, Local& total, Scan scan, Merge merge) {
  threads = std::min(resolve_threads(threads), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    for (std::size_t item = 0; item < count; ++item) {
      if (auto hit = scan(item, total)) return hit;
    }
    return std::nullopt;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best_item{count};
  std::optional<Result> best;
  std::exception_ptr failure;
  std::mutex lock;

  auto worker = [&] {
    Local local{};
    try {
      for (;;) {
        std::size_t item = next.fetch_add(1);
        if (item >= count || item > best_item.load()) break;
        if (auto hit = scan(item, local)) {
          std::lock_guard guard(lock);
          if (item < best_item.load()) {
            best_item.store(item);
            best = std::move(hit);
          }
          break;
        }
      }
    } catch (...) {
      std::lock_guard guard(lock);
      if (!failure) failure = std::current_exception();
    }
    std::lock_guard guard(lock);
    merge(total, local);
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return best;
}

}  // namespace sephash::detail
