#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include <Eigen/Dense>

#include "sfc/features/embedding.hpp"
#include "sfc/task.hpp"

namespace sfc::qlearn {

// Two ReLU layers shared by both heads, then one linear head per task.
// Trained with plain SGD on 0.5 * (q(s, a) - target)^2.
class DenseQ {
 public:
  DenseQ(std::shared_ptr<const features::Embedding> phi, int num_actions, double rate, std::uint64_t seed,
         int hidden = 128);

  Eigen::VectorXd q_values(TaskId head, int s) const;
  void td_update(TaskId head, int s, int a, double target);

  // Flat parameter access in a fixed order: w1 b1 w2 b2 wE bE wI bI.
  Eigen::VectorXd flat_parameters() const;
  void set_flat_parameters(const Eigen::VectorXd& flat);
  // Gradient of 0.5 * (q(s, a) - target)^2 in flat_parameters() order.
  Eigen::VectorXd loss_gradient(TaskId head, int s, int a, double target) const;

  int num_actions() const { return static_cast<int>(head_w_[0].rows()); }
  int hidden() const { return static_cast<int>(w1_.rows()); }
  double rate() const { return rate_; }
  const features::Embedding& embedding() const { return *phi_; }
  std::shared_ptr<const features::Embedding> embedding_ptr() const { return phi_; }

 private:
  struct Activations {
    Eigen::VectorXd x, z1, h1, z2, h2;
  };
  Activations encode(int s) const;

  struct Gradients {
    Eigen::MatrixXd w1, w2, hw;
    Eigen::VectorXd b1, b2, hb;
  };
  Gradients gradients(TaskId head, int s, int a, double target) const;

  std::shared_ptr<const features::Embedding> phi_;
  double rate_;
  Eigen::MatrixXd w1_, w2_;
  Eigen::VectorXd b1_, b2_;
  std::array<Eigen::MatrixXd, 2> head_w_;
  std::array<Eigen::VectorXd, 2> head_b_;
};

}  // namespace sfc::qlearn
