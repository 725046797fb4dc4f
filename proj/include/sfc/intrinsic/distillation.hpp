#pragma once

#include <memory>

#include "sfc/features/embedding.hpp"
#include "sfc/intrinsic/dense_map.hpp"

namespace sfc::intrinsic {

// RND-lite: a frozen random target map and a trainable predictor of the same
// shape, both over phi(s).
class DistillationPair {
 public:
  DistillationPair(std::shared_ptr<const features::Embedding> phi, std::uint64_t seed, int out_dim = 16,
                   int hidden = 64, double rate = 1e-3, bool predictor_matches_target = false);

  double reward(int s_next) const;
  double train(int s_next);

  Eigen::VectorXd target_output(int s) const { return target_.forward(phi_->embed(s)); }
  std::vector<double> target_parameters() const { return target_.parameters(); }
  std::vector<double> predictor_parameters() const { return predictor_.parameters(); }

 private:
  std::shared_ptr<const features::Embedding> phi_;
  double rate_;
  DenseMap target_;
  DenseMap predictor_;
};

}  // namespace sfc::intrinsic
