#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace sfc::intrinsic {

// y = W2 relu(W1 x + b1) + b2, trained by plain SGD on ||y - t||^2.
class DenseMap {
 public:
  struct Init {
    double hidden_scale = 1.0;  // std of W1 entries
    double output_scale = 0.0;  // std of W2 entries; 0 gives a zero map
    std::uint64_t seed = 0;
  };

  DenseMap(int in_dim, int hidden, int out_dim, Init init);

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
  // One SGD step; returns the squared error before the step.
  double sgd_step(const Eigen::VectorXd& x, const Eigen::VectorXd& target, double rate);

  std::vector<double> parameters() const;
  int in_dim() const { return static_cast<int>(w1_.cols()); }
  int out_dim() const { return static_cast<int>(w2_.rows()); }

 private:
  Eigen::MatrixXd w1_;
  Eigen::VectorXd b1_;
  Eigen::MatrixXd w2_;
  Eigen::VectorXd b2_;
};

}  // namespace sfc::intrinsic
