#include "sfc/qlearn/dense.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace sfc::qlearn {

namespace {

Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols, double stddev, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, stddev);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

Eigen::VectorXd relu_mask(const Eigen::VectorXd& z) { return (z.array() > 0.0).cast<double>().matrix(); }

template <typename M>
void append(Eigen::VectorXd& flat, Eigen::Index& at, const M& m) {
  flat.segment(at, m.size()) = Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
  at += m.size();
}

template <typename M>
void extract(const Eigen::VectorXd& flat, Eigen::Index& at, M& m) {
  Eigen::Map<Eigen::VectorXd>(m.data(), m.size()) = flat.segment(at, m.size());
  at += m.size();
}

}  // namespace

DenseQ::DenseQ(std::shared_ptr<const features::Embedding> phi, int num_actions, double rate, std::uint64_t seed,
               int hidden)
    : phi_(std::move(phi)), rate_(rate) {
  if (!phi_) throw std::invalid_argument("DenseQ needs an embedding");
  if (num_actions <= 0 || hidden <= 0) throw std::invalid_argument("DenseQ needs positive sizes");
  std::mt19937_64 rng(seed);
  const int in = phi_->dim();
  w1_ = normal_matrix(hidden, in, std::sqrt(2.0 / in), rng);
  b1_ = Eigen::VectorXd::Zero(hidden);
  w2_ = normal_matrix(hidden, hidden, std::sqrt(2.0 / hidden), rng);
  b2_ = Eigen::VectorXd::Zero(hidden);
  for (int h = 0; h < 2; ++h) {
    head_w_[static_cast<std::size_t>(h)] = normal_matrix(num_actions, hidden, std::sqrt(1.0 / hidden), rng);
    head_b_[static_cast<std::size_t>(h)] = Eigen::VectorXd::Zero(num_actions);
  }
}

DenseQ::Activations DenseQ::encode(int s) const {
  Activations a;
  a.x = phi_->embed(s);
  a.z1 = w1_ * a.x + b1_;
  a.h1 = a.z1.cwiseMax(0.0);
  a.z2 = w2_ * a.h1 + b2_;
  a.h2 = a.z2.cwiseMax(0.0);
  return a;
}

Eigen::VectorXd DenseQ::q_values(TaskId head, int s) const {
  const auto h = static_cast<std::size_t>(index_of(head));
  return head_w_[h] * encode(s).h2 + head_b_[h];
}

DenseQ::Gradients DenseQ::gradients(TaskId head, int s, int a, double target) const {
  const auto h = static_cast<std::size_t>(index_of(head));
  const Activations act = encode(s);
  const double q = head_w_[h].row(a).dot(act.h2) + head_b_[h](a);
  const double dq = q - target;

  Gradients g;
  g.hw = Eigen::MatrixXd::Zero(head_w_[h].rows(), head_w_[h].cols());
  g.hw.row(a) = dq * act.h2.transpose();
  g.hb = Eigen::VectorXd::Zero(head_b_[h].size());
  g.hb(a) = dq;
  const Eigen::VectorXd dz2 = (dq * head_w_[h].row(a).transpose()).cwiseProduct(relu_mask(act.z2));
  g.w2 = dz2 * act.h1.transpose();
  g.b2 = dz2;
  const Eigen::VectorXd dz1 = (w2_.transpose() * dz2).cwiseProduct(relu_mask(act.z1));
  g.w1 = dz1 * act.x.transpose();
  g.b1 = dz1;
  return g;
}

void DenseQ::td_update(TaskId head, int s, int a, double target) {
  const auto h = static_cast<std::size_t>(index_of(head));
  const Gradients g = gradients(head, s, a, target);
  w1_ -= rate_ * g.w1;
  b1_ -= rate_ * g.b1;
  w2_ -= rate_ * g.w2;
  b2_ -= rate_ * g.b2;
  head_w_[h] -= rate_ * g.hw;
  head_b_[h] -= rate_ * g.hb;
}

Eigen::VectorXd DenseQ::flat_parameters() const {
  Eigen::Index n = w1_.size() + b1_.size() + w2_.size() + b2_.size();
  for (int h = 0; h < 2; ++h) n += head_w_[static_cast<std::size_t>(h)].size() + head_b_[static_cast<std::size_t>(h)].size();
  Eigen::VectorXd flat(n);
  Eigen::Index at = 0;
  append(flat, at, w1_);
  append(flat, at, b1_);
  append(flat, at, w2_);
  append(flat, at, b2_);
  for (std::size_t h = 0; h < 2; ++h) {
    append(flat, at, head_w_[h]);
    append(flat, at, head_b_[h]);
  }
  return flat;
}

void DenseQ::set_flat_parameters(const Eigen::VectorXd& flat) {
  if (flat.size() != flat_parameters().size()) throw std::invalid_argument("flat parameter size mismatch");
  Eigen::Index at = 0;
  extract(flat, at, w1_);
  extract(flat, at, b1_);
  extract(flat, at, w2_);
  extract(flat, at, b2_);
  for (std::size_t h = 0; h < 2; ++h) {
    extract(flat, at, head_w_[h]);
    extract(flat, at, head_b_[h]);
  }
}

Eigen::VectorXd DenseQ::loss_gradient(TaskId head, int s, int a, double target) const {
  const Gradients g = gradients(head, s, a, target);
  Eigen::VectorXd flat = Eigen::VectorXd::Zero(flat_parameters().size());
  Eigen::Index at = 0;
  append(flat, at, g.w1);
  append(flat, at, g.b1);
  append(flat, at, g.w2);
  append(flat, at, g.b2);
  for (TaskId t : kAllTasks) {
    const auto h = static_cast<std::size_t>(index_of(t));
    if (t == head) {
      append(flat, at, g.hw);
      append(flat, at, g.hb);
    } else {
      at += head_w_[h].size() + head_b_[h].size();
    }
  }
  return flat;
}

}  // namespace sfc::qlearn
