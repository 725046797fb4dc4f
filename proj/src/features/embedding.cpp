#include "sfc/features/embedding.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace sfc::features {

std::string to_string(EmbeddingKind kind) {
  return kind == EmbeddingKind::OneHot ? "one_hot" : "random_projection";
}

EmbeddingKind embedding_kind_from_string(const std::string& name) {
  if (name == "one_hot" || name == "onehot") return EmbeddingKind::OneHot;
  if (name == "random_projection" || name == "random") return EmbeddingKind::RandomProjection;
  throw std::invalid_argument("unknown embedding kind: " + name);
}

Embedding::Embedding(EmbeddingKind kind, int num_states, int dim, std::uint64_t seed)
    : kind_(kind), num_states_(num_states), dim_(dim), seed_(seed) {
  if (num_states <= 0 || dim <= 0) throw std::invalid_argument("embedding needs positive sizes");
}

Embedding Embedding::one_hot(int num_states) {
  return Embedding(EmbeddingKind::OneHot, num_states, num_states, 0);
}

Embedding Embedding::random_projection(int num_states, int dim, std::uint64_t seed) {
  Embedding e(EmbeddingKind::RandomProjection, num_states, dim, seed);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(dim)));
  e.matrix_.resize(dim, num_states);
  for (int j = 0; j < num_states; ++j)
    for (int i = 0; i < dim; ++i) e.matrix_(i, j) = normal(rng);
  return e;
}

Eigen::VectorXd Embedding::embed(int state_id) const {
  if (state_id < 0 || state_id >= num_states_)
    throw std::out_of_range("state id " + std::to_string(state_id) + " outside embedding");
  if (kind_ == EmbeddingKind::OneHot) return Eigen::VectorXd::Unit(dim_, state_id);
  return matrix_.col(state_id);
}

void Embedding::accumulate(int state_id, Eigen::Ref<Eigen::RowVectorXd> out) const {
  if (state_id < 0 || state_id >= num_states_)
    throw std::out_of_range("state id " + std::to_string(state_id) + " outside embedding");
  if (out.size() != dim_) throw std::invalid_argument("accumulate: size mismatch");
  if (kind_ == EmbeddingKind::OneHot)
    out(state_id) += 1.0;
  else
    out += matrix_.col(state_id).transpose();
}

Eigen::MatrixXd Embedding::rows() const {
  if (kind_ == EmbeddingKind::OneHot) return Eigen::MatrixXd::Identity(num_states_, num_states_);
  return matrix_.transpose();
}

}  // namespace sfc::features
