#include "sfc/sid/config.hpp"

#include <sstream>
#include <stdexcept>

namespace sfc::sid {

std::string to_string(AgentKind k) {
  switch (k) {
    case AgentKind::M: return "m";
    case AgentKind::BonusSum: return "bonus";
    case AgentKind::Sid: return "sid";
  }
  return "?";
}

std::string to_string(IntrinsicKind k) {
  switch (k) {
    case IntrinsicKind::None: return "none";
    case IntrinsicKind::Sfc: return "sfc";
    case IntrinsicKind::Icm: return "icm";
    case IntrinsicKind::Rnd: return "rnd";
  }
  return "?";
}

std::string to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::Random: return "random";
    case SchedulerKind::Switching: return "switching";
    case SchedulerKind::MacroQ: return "macro_q";
    case SchedulerKind::ThresholdQ: return "threshold_q";
  }
  return "?";
}

std::string to_string(ThresholdVariant v) {
  return v == ThresholdVariant::RunningMean ? "running_mean" : "heuristic_median";
}

AgentKind agent_kind_from_string(const std::string& s) {
  if (s == "m") return AgentKind::M;
  if (s == "bonus" || s == "bonus_sum") return AgentKind::BonusSum;
  if (s == "sid") return AgentKind::Sid;
  throw std::invalid_argument("unknown agent kind: " + s);
}

IntrinsicKind intrinsic_kind_from_string(const std::string& s) {
  if (s == "none") return IntrinsicKind::None;
  if (s == "sfc") return IntrinsicKind::Sfc;
  if (s == "icm") return IntrinsicKind::Icm;
  if (s == "rnd") return IntrinsicKind::Rnd;
  throw std::invalid_argument("unknown intrinsic kind: " + s);
}

SchedulerKind scheduler_kind_from_string(const std::string& s) {
  if (s == "random") return SchedulerKind::Random;
  if (s == "switching") return SchedulerKind::Switching;
  if (s == "macro_q") return SchedulerKind::MacroQ;
  if (s == "threshold_q") return SchedulerKind::ThresholdQ;
  throw std::invalid_argument("unknown scheduler kind: " + s);
}

ThresholdVariant threshold_variant_from_string(const std::string& s) {
  if (s == "running_mean") return ThresholdVariant::RunningMean;
  if (s == "heuristic_median") return ThresholdVariant::HeuristicMedian;
  throw std::invalid_argument("unknown threshold variant: " + s);
}

void RunConfig::validate() const {
  std::ostringstream problems;
  auto need = [&](bool ok, const char* what) {
    if (!ok) problems << "\n  " << what;
  };
  need(!env.name.empty() || !env.map_file.empty(), "env.name or env.map_file is required");
  need(env.max_steps >= 0, "env.max_steps must be >= 0");
  need(embedding.dim > 0, "embedding.dim must be positive");
  need(sf.gamma > 0.0 && sf.gamma < 1.0, "sf.gamma must lie in (0, 1)");
  need(sf.alpha > 0.0 && sf.alpha <= 1.0, "sf.alpha must lie in (0, 1]");
  need(intrinsic.eta >= 0.0, "intrinsic.eta must be >= 0");
  need(intrinsic.gamma_i >= 0.0 && intrinsic.gamma_i < 1.0, "intrinsic.gamma_i must lie in [0, 1)");
  need(intrinsic.scale >= 0.0, "intrinsic.scale must be >= 0");
  need(intrinsic.hidden > 0 && intrinsic.rnd_out > 0 && intrinsic.rate > 0.0, "intrinsic model sizes/rate must be positive");
  need(agent.kind != AgentKind::M || intrinsic.kind == IntrinsicKind::None,
       "agent m takes no intrinsic reward (set intrinsic.kind = none)");
  need(q.gamma_e >= 0.0 && q.gamma_e < 1.0 && q.gamma_i >= 0.0 && q.gamma_i < 1.0, "q discounts must lie in [0, 1)");
  need(q.alpha > 0.0 && q.alpha <= 1.0, "q.alpha must lie in (0, 1]");
  need(q.sync_interval > 0, "q.sync_interval must be positive");
  need(q.dense_rate > 0.0 && q.dense_hidden > 0, "dense settings must be positive");
  need(replay.main_capacity > 0 && replay.high_capacity > 0, "replay capacities must be positive");
  need(replay.batch > 0 && replay.high_share <= replay.batch, "replay.high_share must not exceed replay.batch");
  need(scheduler.slots > 0, "scheduler.slots must be positive");
  need(scheduler.macro_alpha > 0.0 && scheduler.macro_alpha <= 1.0, "scheduler.macro_alpha must lie in (0, 1]");
  need(scheduler.macro_epsilon >= 0.0 && scheduler.macro_epsilon <= 1.0, "scheduler.macro_epsilon must lie in [0, 1]");
  need(agent.actors > 0, "agent.actors must be positive");
  need(agent.k > 0, "agent.k must be positive");
  need(agent.epsilon_base > 0.0 && agent.epsilon_base <= 1.0, "agent.epsilon_base must lie in (0, 1]");
  need(agent.snapshot_interval > 0, "agent.snapshot_interval must be positive");
  need(budget >= 0, "run.budget must be >= 0");
  need(learner_steps_per_episode >= 0, "run.learner_steps_per_episode must be >= 0");
  need(learn_start >= 1, "run.learn_start must be >= 1");
  need(log_interval > 0, "run.log_interval must be positive");
  const std::string text = problems.str();
  if (!text.empty()) throw std::invalid_argument("invalid configuration:" + text);
}

}  // namespace sfc::sid
