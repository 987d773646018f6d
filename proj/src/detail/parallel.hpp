#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

namespace approx::detail {

// Result of body(i) for the lowest i in [0, n) where it is engaged. The
// parallel path evaluates indices concurrently but keeps only the smallest,
// so both paths return the same value.
template <class T, class Body>
std::optional<T> first_hit(std::uint64_t n, bool parallel, Body&& body) {
  if (!parallel) {
    for (std::uint64_t i = 0; i < n; ++i)
      if (auto r = body(i)) return r;
    return std::nullopt;
  }
  std::atomic<std::uint64_t> best{n};
  std::optional<T> result;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    auto u = static_cast<std::uint64_t>(i);
    if (u > best.load(std::memory_order_relaxed)) continue;
    std::optional<T> r = body(u);
    if (r) {
#pragma omp critical(approx_first_hit)
      {
        if (u < best.load()) {
          best.store(u);
          result = std::move(r);
        }
      }
    }
  }
  return result;
}

// body(i) for every i in [0, n). Bodies must write only to slot i.
template <class Body>
void for_each_index(std::uint64_t n, bool parallel, Body&& body) {
  const auto count = static_cast<std::int64_t>(n);
  if (!parallel) {
    for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::uint64_t>(i));
    return;
  }
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::uint64_t>(i));
}

}  // namespace approx::detail
