#pragma once

#include <memory>

#include "sfc/features/embedding.hpp"
#include "sfc/intrinsic/dense_map.hpp"

namespace sfc::intrinsic {

// ICM-lite: predicts phi(s') from [phi(s), one_hot(a)] in the fixed embedding
// space, without an inverse-dynamics head. Output layer starts at zero.
class ForwardModel {
 public:
  ForwardModel(std::shared_ptr<const features::Embedding> phi, int num_actions, std::uint64_t seed,
               int hidden = 64, double rate = 1e-3);

  double reward(int s, int action, int s_next) const;
  // Returns the pre-step prediction error.
  double train(int s, int action, int s_next);

  std::vector<double> parameters() const { return net_.parameters(); }

 private:
  Eigen::VectorXd input(int s, int action) const;

  std::shared_ptr<const features::Embedding> phi_;
  int num_actions_;
  double rate_;
  DenseMap net_;
};

}  // namespace sfc::intrinsic
