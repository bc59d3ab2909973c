// Deterministic fan-out helpers. Results never depend on the thread count.
#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace cfd {

/// Smallest index i < count with pred(i), or nullopt. Indices are scanned in
/// blocks; each block is split across `threads` workers and the scan stops at
/// the first block that contains a hit, so the answer equals the sequential one.
template <typename Pred>
std::optional<std::size_t> first_index_where(std::size_t count, int threads, Pred&& pred) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  const std::size_t workers = static_cast<std::size_t>(threads);
  const std::size_t block = workers * 256;
  for (std::size_t start = 0; start < count; start += block) {
    const std::size_t stop = std::min(count, start + block);
    std::vector<std::optional<std::size_t>> hit(workers);
    std::vector<std::exception_ptr> err(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = start + w; i < stop; i += workers)
              if (pred(i)) {
                hit[w] = i;
                return;
              }
          } catch (...) {
            err[w] = std::current_exception();
          }
        });
    }
    for (auto& e : err)
      if (e) std::rethrow_exception(e);
    std::optional<std::size_t> best;
    for (auto& h : hit)
      if (h && (!best || *h < *best)) best = h;
    if (best) return best;
  }
  return std::nullopt;
}

/// out[i] = fn(i) for i < count, computed on up to `threads` workers.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, int threads, Fn&& fn) {
  std::vector<std::optional<T>> slots(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i] = fn(i);
  } else {
    const std::size_t workers = static_cast<std::size_t>(threads);
    std::vector<std::exception_ptr> err(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < count; i += workers) slots[i] = fn(i);
          } catch (...) {
            err[w] = std::current_exception();
          }
        });
    }
    for (auto& e : err)
      if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace cfd
