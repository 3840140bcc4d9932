#pragma once

#include <chrono>
#include <cstdint>
#include <string>

namespace magma {

/// Resource limit for one solving attempt.
///
/// Step units are engine-specific: a cell assignment for the model finder,
/// a given-equation iteration for saturation.
struct Budget {
  enum class Kind { Unlimited, Steps, WallSeconds };

  Kind kind = Kind::Unlimited;
  double amount = 0;

  static Budget unlimited() { return {}; }
  static Budget steps(std::uint64_t n) { return {Kind::Steps, static_cast<double>(n)}; }
  static Budget seconds(double s) { return {Kind::WallSeconds, s}; }

  friend bool operator==(const Budget&, const Budget&) = default;
};

std::string describe(const Budget& b);

/// Tracks consumption against a Budget. The clock is sampled only every
/// `clock_stride` steps so that it stays off cheap hot paths.
class BudgetMeter {
 public:
  explicit BudgetMeter(Budget budget, std::uint64_t clock_stride = 1)
      : budget_(budget),
        stride_(clock_stride ? clock_stride : 1),
        start_(std::chrono::steady_clock::now()) {}

  // True once no further step may be taken.
  bool exhausted() {
    switch (budget_.kind) {
      case Budget::Kind::Unlimited:
        return false;
      case Budget::Kind::Steps:
        return static_cast<double>(steps_) >= budget_.amount;
      case Budget::Kind::WallSeconds:
        if (budget_.amount <= 0) return true;
        if (steps_ % stride_ != 0 && !timed_out_) return false;
        timed_out_ = timed_out_ || elapsed() >= budget_.amount;
        return timed_out_;
    }
    return false;
  }

  void consume() { ++steps_; }
  std::uint64_t steps() const noexcept { return steps_; }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  Budget budget_;
  std::uint64_t stride_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t steps_ = 0;
  bool timed_out_ = false;
};

}  // namespace magma
