#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "sfc/features/embedding.hpp"
#include "sfc/intrinsic/distillation.hpp"
#include "sfc/intrinsic/forward_model.hpp"
#include "sfc/intrinsic/normalizer.hpp"
#include "sfc/qlearn/value.hpp"
#include "sfc/replay/buffer.hpp"
#include "sfc/sf/successor.hpp"
#include "sfc/sid/actor.hpp"
#include "sfc/sid/config.hpp"

namespace sfc::sid {

struct LearnerDiagnostics {
  std::int64_t step = 0;
  double raw_intrinsic_mean = 0.0;
  double normalized_intrinsic_mean = 0.0;
  double extrinsic_scale = 1.0;
  double extrinsic_td_mean = 0.0;  // mean |target - q| before the update
  double intrinsic_td_mean = 0.0;
};

// Per-element rewards and targets of one batch, exposed for inspection.
struct BatchTrace {
  std::vector<double> raw_intrinsic;
  std::vector<double> normalized_intrinsic;
  std::vector<double> extrinsic_rewards;  // what the extrinsic head regressed on
  std::vector<double> extrinsic_targets;
  std::vector<double> intrinsic_targets;  // SID only
};

// Owns every trainable piece: Q online + target, successor features,
// intrinsic models and the reward normalizer.
class Learner {
 public:
  Learner(const RunConfig& config, std::shared_ptr<const features::Embedding> phi, std::uint64_t seed);

  LearnerDiagnostics step(const replay::TwoTierBuffer& buffer);
  LearnerDiagnostics learn_on_batch(const std::vector<replay::Sampled>& batch, BatchTrace* trace = nullptr);

  Snapshot snapshot() const;

  const qlearn::ValueApproximator& online() const { return online_; }
  const qlearn::ValueApproximator& target() const { return target_; }
  qlearn::ValueApproximator& mutable_online() { return online_; }
  const sf::SfTable& sf() const { return sf_; }
  sf::SfTable& mutable_sf() { return sf_; }
  const intrinsic::Normalizer& normalizer() const { return normalizer_; }
  std::int64_t step_count() const { return steps_; }
  AgentKind agent() const { return agent_; }

 private:
  double raw_intrinsic(const replay::Transition& t) const;

  AgentKind agent_;
  IntrinsicKind intrinsic_kind_;
  double intrinsic_scale_;
  int k_;
  int sync_interval_;
  std::shared_ptr<const features::Embedding> phi_;
  qlearn::ValueApproximator online_;
  qlearn::ValueApproximator target_;
  sf::SfTable sf_;
  std::optional<intrinsic::ForwardModel> icm_;
  std::optional<intrinsic::DistillationPair> rnd_;
  intrinsic::Normalizer normalizer_;
  std::mt19937_64 rng_;
  std::int64_t steps_ = 0;
};

qlearn::ValueApproximator make_value(const RunConfig& config, std::shared_ptr<const features::Embedding> phi,
                                     std::uint64_t seed);

}  // namespace sfc::sid
