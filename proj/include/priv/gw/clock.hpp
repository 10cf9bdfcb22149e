#pragma once

#include <chrono>
#include <functional>

namespace priv::gw {

// Monotonic seconds. Injected everywhere time matters so rate limiting and
// latency accounting run under simulated time in tests.
using ClockFn = std::function<double()>;

inline double steady_now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Controllable clock for tests and deterministic evaluation runs.
class SimClock {
 public:
  explicit SimClock(double start = 0.0) : now_(start) {}
  double now() const { return now_; }
  void advance(double seconds) { now_ += seconds; }
  ClockFn fn() { return [this] { return now_; }; }

 private:
  double now_;
};

// Advances by a fixed quantum on every read, so pipelines observe nonzero,
// fully reproducible durations proportional to the number of stages touched.
class TickingClock {
 public:
  explicit TickingClock(double quantum_seconds = 1e-4) : quantum_(quantum_seconds) {}
  ClockFn fn() {
    return [this] {
      now_ += quantum_;
      return now_;
    };
  }

 private:
  double quantum_;
  double now_ = 0.0;
};

}  // namespace priv::gw
