#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace sfc::features {

enum class EmbeddingKind { OneHot, RandomProjection };

std::string to_string(EmbeddingKind kind);
EmbeddingKind embedding_kind_from_string(const std::string& name);

// Fixed state embedding phi. Never trained; immutable after construction.
class Embedding {
 public:
  static Embedding one_hot(int num_states);
  // Entries i.i.d. normal(0, 1/dim), drawn once from `seed`.
  static Embedding random_projection(int num_states, int dim, std::uint64_t seed);

  EmbeddingKind kind() const { return kind_; }
  int dim() const { return dim_; }
  int num_states() const { return num_states_; }
  std::uint64_t seed() const { return seed_; }

  Eigen::VectorXd embed(int state_id) const;
  // out += phi(state_id)^T without allocating.
  void accumulate(int state_id, Eigen::Ref<Eigen::RowVectorXd> out) const;
  // |S| x m matrix whose row s is phi(s).
  Eigen::MatrixXd rows() const;

 private:
  Embedding(EmbeddingKind kind, int num_states, int dim, std::uint64_t seed);

  EmbeddingKind kind_;
  int num_states_;
  int dim_;
  std::uint64_t seed_;
  Eigen::MatrixXd matrix_;  // m x |S|, RandomProjection only
};

}  // namespace sfc::features
