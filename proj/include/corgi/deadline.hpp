#pragma once

#include <chrono>
#include <optional>

namespace corgi {

/// Optional wall-clock limit checked cooperatively by long-running loops.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline after(std::chrono::duration<double> budget) {
    Deadline d;
    d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(budget);
    return d;
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }

  // Cheap amortized check for hot loops.
  bool poll() {
    if (!at_) return false;
    if (++ticks_ % 4096 != 0) return false;
    return expired();
  }

 private:
  std::optional<Clock::time_point> at_;
  unsigned ticks_ = 0;
};

}  // namespace corgi
