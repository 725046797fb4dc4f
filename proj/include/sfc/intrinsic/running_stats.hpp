#pragma once

#include <cmath>
#include <cstdint>

namespace sfc::intrinsic {

// Welford streaming mean / population variance.
class RunningStats {
 public:
  void push(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void reset() { *this = RunningStats{}; }

  std::int64_t count() const { return count_; }
  double mean() const { return mean_; }
  double m2() const { return m2_; }
  double variance() const { return count_ > 0 ? m2_ / static_cast<double>(count_) : 0.0; }
  double stddev() const { return std::sqrt(variance()); }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace sfc::intrinsic
