#include "sfc/sid/scheduler.hpp"

#include <cmath>
#include <stdexcept>

#include "sfc/qlearn/value.hpp"

namespace sfc::sid {

Scheduler::Scheduler(SchedulerConfig config, int num_states, double gamma_e, std::uint64_t seed)
    : config_(config), gamma_e_(gamma_e), rng_(seed) {
  if (config_.slots < 1) throw std::invalid_argument("scheduler needs at least one slot");
  if (config_.kind == SchedulerKind::MacroQ) macro_ = Eigen::MatrixXd::Zero(num_states, 2);
}

int Scheduler::slot_length(int max_steps) const { return (max_steps + config_.slots - 1) / config_.slots; }

TaskId Scheduler::next_task(const SchedulerContext& context) {
  switch (config_.kind) {
    case SchedulerKind::Random:
      return std::bernoulli_distribution(0.5)(rng_) ? TaskId::Intrinsic : TaskId::Extrinsic;
    case SchedulerKind::Switching:
      return context.slot_index % 2 == 0 ? TaskId::Extrinsic : TaskId::Intrinsic;
    case SchedulerKind::ThresholdQ: {
      const double bar = config_.threshold_variant == ThresholdVariant::RunningMean ? context.running_q_mean
                                                                                    : config_.threshold;
      return context.q_extrinsic_value_at_state < bar ? TaskId::Intrinsic : TaskId::Extrinsic;
    }
    case SchedulerKind::MacroQ: {
      if (std::bernoulli_distribution(config_.macro_epsilon)(rng_))
        return std::bernoulli_distribution(0.5)(rng_) ? TaskId::Intrinsic : TaskId::Extrinsic;
      const Eigen::VectorXd values = macro_.row(context.state_id).transpose();
      return static_cast<TaskId>(qlearn::argmax_lowest(values));
    }
  }
  return TaskId::Extrinsic;
}

void Scheduler::macro_q_update(const MacroTransition& t) {
  if (config_.kind != SchedulerKind::MacroQ) throw std::logic_error("macro_q_update on a non-MacroQ scheduler");
  if (t.m < 1) throw std::invalid_argument("macro gap must be positive");
  const double bootstrap = t.done ? 0.0 : std::pow(gamma_e_, t.m) * macro_.row(t.s_to).maxCoeff();
  double& q = macro_(t.s_from, index_of(t.task));
  q += config_.macro_alpha * (t.discounted_return + bootstrap - q);
}

}  // namespace sfc::sid
