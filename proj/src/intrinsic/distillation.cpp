#include "sfc/intrinsic/distillation.hpp"

#include <cmath>

namespace sfc::intrinsic {

namespace {

DenseMap::Init target_init(int hidden, std::uint64_t seed) {
  return {1.0, 1.0 / std::sqrt(static_cast<double>(hidden)), seed};
}

}  // namespace

DistillationPair::DistillationPair(std::shared_ptr<const features::Embedding> phi, std::uint64_t seed,
                                   int out_dim, int hidden, double rate, bool predictor_matches_target)
    : phi_(std::move(phi)), rate_(rate), target_(phi_->dim(), hidden, out_dim, target_init(hidden, seed)),
      predictor_(predictor_matches_target
                     ? target_
                     : DenseMap(phi_->dim(), hidden, out_dim, DenseMap::Init{1.0, 0.0, seed ^ 0x9e3779b97f4a7c15ULL})) {}

double DistillationPair::reward(int s_next) const {
  const Eigen::VectorXd x = phi_->embed(s_next);
  return (predictor_.forward(x) - target_.forward(x)).squaredNorm();
}

double DistillationPair::train(int s_next) {
  const Eigen::VectorXd x = phi_->embed(s_next);
  return predictor_.sgd_step(x, target_.forward(x), rate_);
}

}  // namespace sfc::intrinsic
