#pragma once

#include <cstdint>

namespace pivot::flops {

// One flop is one scalar update of the form x = x + t*y, or one division.
// Counting is per thread and only active inside a Counter's lifetime; with
// PIVOT_FLOP_COUNTING undefined the kernels carry no instrumentation at all.

namespace detail {
inline thread_local bool enabled = false;
inline thread_local std::uint64_t count = 0;
}  // namespace detail

inline void add([[maybe_unused]] std::uint64_t k) noexcept {
#ifdef PIVOT_FLOP_COUNTING
  if (detail::enabled) detail::count += k;
#endif
}

inline constexpr bool instrumented() noexcept {
#ifdef PIVOT_FLOP_COUNTING
  return true;
#else
  return false;
#endif
}

/// Enables counting on the current thread for its lifetime and restores the
/// previous state on destruction. Nested counters each see only their own work.
class Counter {
 public:
  Counter() noexcept : was_enabled_(detail::enabled), saved_(detail::count) {
    detail::enabled = true;
    detail::count = 0;
  }
  ~Counter() {
    const std::uint64_t mine = detail::count;
    detail::enabled = was_enabled_;
    detail::count = saved_ + (was_enabled_ ? mine : 0);
  }
  Counter(const Counter&) = delete;
  Counter& operator=(const Counter&) = delete;

  std::uint64_t count() const noexcept { return detail::count; }

 private:
  bool was_enabled_;
  std::uint64_t saved_;
};

}  // namespace pivot::flops
