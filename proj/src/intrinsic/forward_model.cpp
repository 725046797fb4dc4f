#include "sfc/intrinsic/forward_model.hpp"

#include <random>
#include <stdexcept>

namespace sfc::intrinsic {

ForwardModel::ForwardModel(std::shared_ptr<const features::Embedding> phi, int num_actions, std::uint64_t seed,
                           int hidden, double rate)
    : phi_(std::move(phi)), num_actions_(num_actions), rate_(rate),
      net_(phi_->dim() + num_actions, hidden, phi_->dim(), DenseMap::Init{1.0, 0.0, seed}) {}

Eigen::VectorXd ForwardModel::input(int s, int action) const {
  if (action < 0 || action >= num_actions_) throw std::out_of_range("action out of range");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(phi_->dim() + num_actions_);
  x.head(phi_->dim()) = phi_->embed(s);
  x(phi_->dim() + action) = 1.0;
  return x;
}

double ForwardModel::reward(int s, int action, int s_next) const {
  return (net_.forward(input(s, action)) - phi_->embed(s_next)).squaredNorm();
}

double ForwardModel::train(int s, int action, int s_next) {
  return net_.sgd_step(input(s, action), phi_->embed(s_next), rate_);
}

}  // namespace sfc::intrinsic
