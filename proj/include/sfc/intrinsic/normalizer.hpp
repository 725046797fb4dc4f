#pragma once

#include <cstdint>

#include "sfc/intrinsic/running_stats.hpp"

namespace sfc::intrinsic {

// Divides raw intrinsic rewards by their running standard deviation and
// derives the extrinsic reward scale eta * r_I' / (1 - gamma_I) from the
// running mean r_I' of the normalized stream.
class Normalizer {
 public:
  static constexpr double kStdFloor = 1e-8;

  explicit Normalizer(double eta = 3.0, double gamma_i = 0.99);

  // Update-then-divide: the raw sample is folded into the std estimate first.
  double normalize(double raw);

  double current_std() const;
  double mean_normalized() const { return normalized_.mean(); }
  double extrinsic_scale() const;
  // extrinsic_scale(), or 1 while no intrinsic reward has been seen.
  double effective_extrinsic_scale() const;

  const RunningStats& raw_stats() const { return raw_; }
  const RunningStats& normalized_stats() const { return normalized_; }
  std::int64_t floored_count() const { return floored_; }
  double eta() const { return eta_; }
  double gamma_i() const { return gamma_i_; }

 private:
  RunningStats raw_;
  RunningStats normalized_;
  double eta_;
  double gamma_i_;
  std::int64_t floored_ = 0;
};

}  // namespace sfc::intrinsic
