#include "sfc/sid/learner.hpp"

#include <cmath>
#include <stdexcept>

namespace sfc::sid {

qlearn::ValueApproximator make_value(const RunConfig& config, std::shared_ptr<const features::Embedding> phi,
                                     std::uint64_t seed) {
  auto q = config.q.mode == qlearn::Mode::Tabular
               ? qlearn::ValueApproximator::tabular(phi->num_states(), env::kActionCount, config.q.alpha)
               : qlearn::ValueApproximator::dense(phi, env::kActionCount, config.q.dense_rate, seed,
                                                  config.q.dense_hidden);
  q.set_gamma(TaskId::Extrinsic, config.q.gamma_e);
  q.set_gamma(TaskId::Intrinsic, config.q.gamma_i);
  return q;
}

Learner::Learner(const RunConfig& config, std::shared_ptr<const features::Embedding> phi, std::uint64_t seed)
    : agent_(config.agent.kind),
      intrinsic_kind_(config.agent.kind == AgentKind::M ? IntrinsicKind::None : config.intrinsic.kind),
      intrinsic_scale_(config.intrinsic.scale), k_(config.agent.k), sync_interval_(config.q.sync_interval),
      phi_(phi), online_(make_value(config, phi, seed)), target_(online_),
      sf_(phi, config.sf.gamma, config.sf.alpha, config.sf.convention),
      normalizer_(config.intrinsic.eta, config.intrinsic.gamma_i), rng_(seed ^ 0x5bd1e995ULL) {
  if (intrinsic_kind_ == IntrinsicKind::Icm)
    icm_.emplace(phi, env::kActionCount, seed + 11, config.intrinsic.hidden, config.intrinsic.rate);
  if (intrinsic_kind_ == IntrinsicKind::Rnd)
    rnd_.emplace(phi, seed + 13, config.intrinsic.rnd_out, config.intrinsic.hidden, config.intrinsic.rate);
}

double Learner::raw_intrinsic(const replay::Transition& t) const {
  switch (intrinsic_kind_) {
    case IntrinsicKind::None: return 0.0;
    case IntrinsicKind::Sfc: return sf_.sfc_reward(t.s_start, t.s_end);
    case IntrinsicKind::Icm: return icm_->reward(t.pair_s, t.a_start, t.pair_s_next);
    case IntrinsicKind::Rnd: return rnd_->reward(t.pair_s_next);
  }
  return 0.0;
}

LearnerDiagnostics Learner::step(const replay::TwoTierBuffer& buffer) {
  return learn_on_batch(buffer.sample(rng_));
}

LearnerDiagnostics Learner::learn_on_batch(const std::vector<replay::Sampled>& batch, BatchTrace* trace) {
  const std::size_t n = batch.size();
  std::vector<double> raw(n, 0.0), normalized(n, 0.0);
  const bool has_intrinsic = agent_ != AgentKind::M;
  if (has_intrinsic) {
    for (std::size_t i = 0; i < n; ++i) {
      raw[i] = intrinsic_scale_ * raw_intrinsic(batch[i].transition);
      normalized[i] = normalizer_.normalize(raw[i]);
    }
  }
  // Read after this batch's rewards have been folded in.
  const double scale = has_intrinsic ? normalizer_.effective_extrinsic_scale() : 1.0;
  const double gamma_e = online_.gamma(TaskId::Extrinsic);
  const double gamma_i = online_.gamma(TaskId::Intrinsic);

  std::vector<double> ext_reward(n), ext_target(n), int_target;
  LearnerDiagnostics diag;
  for (std::size_t i = 0; i < n; ++i) {
    const replay::Transition& t = batch[i].transition;
    ext_reward[i] = scale * t.discounted_reward_sum;
    if (agent_ == AgentKind::BonusSum) ext_reward[i] += normalized[i];
    ext_target[i] = qlearn::k_step_target(online_, target_, TaskId::Extrinsic, ext_reward[i], t.s_end, t.done,
                                          t.steps, gamma_e);
    diag.extrinsic_td_mean += std::abs(ext_target[i] - online_.q_value(TaskId::Extrinsic, t.s_start, t.a_start));
  }
  if (agent_ == AgentKind::Sid) {
    int_target.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const replay::Transition& t = batch[i].transition;
      int_target[i] = qlearn::k_step_target(online_, target_, TaskId::Intrinsic, normalized[i], t.s_end, t.done,
                                            t.steps, gamma_i);
      diag.intrinsic_td_mean += std::abs(int_target[i] - online_.q_value(TaskId::Intrinsic, t.s_start, t.a_start));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const replay::Transition& t = batch[i].transition;
    online_.td_update(TaskId::Extrinsic, t.s_start, t.a_start, ext_target[i]);
    if (agent_ == AgentKind::Sid) online_.td_update(TaskId::Intrinsic, t.s_start, t.a_start, int_target[i]);
  }
  for (const auto& s : batch) {
    const replay::Transition& t = s.transition;
    sf_.td_update(t.pair_s, t.pair_s_next);
    if (icm_) icm_->train(t.pair_s, t.a_start, t.pair_s_next);
    if (rnd_) rnd_->train(t.pair_s_next);
  }

  ++steps_;
  if (steps_ % sync_interval_ == 0) target_ = online_;

  if (n > 0) {
    double raw_sum = 0.0, norm_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      raw_sum += raw[i];
      norm_sum += normalized[i];
    }
    diag.raw_intrinsic_mean = raw_sum / static_cast<double>(n);
    diag.normalized_intrinsic_mean = norm_sum / static_cast<double>(n);
    diag.extrinsic_td_mean /= static_cast<double>(n);
    diag.intrinsic_td_mean /= static_cast<double>(n);
  }
  diag.extrinsic_scale = scale;
  diag.step = steps_;
  if (trace) {
    trace->raw_intrinsic = std::move(raw);
    trace->normalized_intrinsic = std::move(normalized);
    trace->extrinsic_rewards = std::move(ext_reward);
    trace->extrinsic_targets = std::move(ext_target);
    trace->intrinsic_targets = std::move(int_target);
  }
  return diag;
}

Snapshot Learner::snapshot() const {
  return {online_, agent_ == AgentKind::M ? 1.0 : normalizer_.effective_extrinsic_scale(), steps_};
}

}  // namespace sfc::sid
