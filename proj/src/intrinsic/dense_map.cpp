#include "sfc/intrinsic/dense_map.hpp"

#include <random>
#include <stdexcept>

namespace sfc::intrinsic {

DenseMap::DenseMap(int in_dim, int hidden, int out_dim, Init init)
    : w1_(hidden, in_dim), b1_(Eigen::VectorXd::Zero(hidden)), w2_(out_dim, hidden),
      b2_(Eigen::VectorXd::Zero(out_dim)) {
  if (in_dim <= 0 || hidden <= 0 || out_dim <= 0) throw std::invalid_argument("DenseMap needs positive sizes");
  std::mt19937_64 rng(init.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index i = 0; i < w1_.size(); ++i) w1_.data()[i] = init.hidden_scale * normal(rng);
  for (Eigen::Index i = 0; i < w2_.size(); ++i)
    w2_.data()[i] = init.output_scale > 0.0 ? init.output_scale * normal(rng) : 0.0;
}

Eigen::VectorXd DenseMap::forward(const Eigen::VectorXd& x) const {
  return w2_ * (w1_ * x + b1_).cwiseMax(0.0) + b2_;
}

double DenseMap::sgd_step(const Eigen::VectorXd& x, const Eigen::VectorXd& target, double rate) {
  const Eigen::VectorXd z = w1_ * x + b1_;
  const Eigen::VectorXd h = z.cwiseMax(0.0);
  const Eigen::VectorXd err = w2_ * h + b2_ - target;
  const Eigen::VectorXd dy = 2.0 * err;
  const Eigen::VectorXd dz = (w2_.transpose() * dy).cwiseProduct((z.array() > 0.0).cast<double>().matrix());
  w2_ -= rate * dy * h.transpose();
  b2_ -= rate * dy;
  w1_ -= rate * dz * x.transpose();
  b1_ -= rate * dz;
  return err.squaredNorm();
}

std::vector<double> DenseMap::parameters() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(w1_.size() + b1_.size() + w2_.size() + b2_.size()));
  for (const Eigen::MatrixXd* m : {&w1_, &w2_}) out.insert(out.end(), m->data(), m->data() + m->size());
  for (const Eigen::VectorXd* v : {&b1_, &b2_}) out.insert(out.end(), v->data(), v->data() + v->size());
  return out;
}

}  // namespace sfc::intrinsic
