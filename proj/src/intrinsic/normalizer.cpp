#include "sfc/intrinsic/normalizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfc::intrinsic {

Normalizer::Normalizer(double eta, double gamma_i) : eta_(eta), gamma_i_(gamma_i) {
  if (!(gamma_i >= 0.0 && gamma_i <= 1.0 - 1e-9)) throw std::invalid_argument("gamma_i must lie in [0, 1)");
}

double Normalizer::current_std() const {
  if (raw_.count() < 2) return 1.0;
  return std::max(raw_.stddev(), kStdFloor);
}

double Normalizer::normalize(double raw) {
  raw_.push(raw);
  if (raw_.count() >= 2 && raw_.stddev() < kStdFloor && raw != 0.0) ++floored_;
  const double out = raw / current_std();
  normalized_.push(out);
  return out;
}

double Normalizer::extrinsic_scale() const {
  // gamma_i comes from decimal config text; snapping 1 - gamma_i to 1e-12
  // removes binary representation error (0.99 -> 0.01 rather than 0.0100...09).
  const double horizon = std::round((1.0 - gamma_i_) * 1e12) / 1e12;
  return eta_ * normalized_.mean() / horizon;
}

double Normalizer::effective_extrinsic_scale() const {
  const double s = extrinsic_scale();
  return s > 0.0 ? s : 1.0;
}

}  // namespace sfc::intrinsic
