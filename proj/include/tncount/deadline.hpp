#pragma once

#include <chrono>
#include <stop_token>

#include "tncount/errors.hpp"

namespace tnc {

using Clock = std::chrono::steady_clock;

/// Cooperative cancellation point: a wall-clock deadline plus an optional
/// stop token.
struct Deadline {
  Clock::time_point at = Clock::time_point::max();
  std::stop_token stop;

  static Deadline never() { return {}; }
  static Deadline in(double seconds, std::stop_token stop = {}) {
    Deadline d;
    d.at = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
    d.stop = std::move(stop);
    return d;
  }

  bool expired() const { return stop.stop_requested() || Clock::now() >= at; }

  /// Throws Cancelled or TimeoutError once the deadline is reached.
  void check() const {
    if (stop.stop_requested()) throw Cancelled();
    if (Clock::now() >= at) throw TimeoutError("deadline reached");
  }
};

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace tnc
