#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "sfc/sid/config.hpp"
#include "sfc/task.hpp"

namespace sfc::sid {

struct SchedulerContext {
  double q_extrinsic_value_at_state = 0.0;
  double running_q_mean = 0.0;
  int slot_index = 0;
  int state_id = 0;  // MacroQ only
};

struct MacroTransition {
  int s_from = 0;
  int s_to = 0;
  TaskId task = TaskId::Extrinsic;
  double discounted_return = 0.0;
  int m = 1;
  bool done = false;
};

// Picks the active drive at each slot boundary of an episode.
class Scheduler {
 public:
  Scheduler(SchedulerConfig config, int num_states, double gamma_e, std::uint64_t seed);

  TaskId next_task(const SchedulerContext& context);
  void macro_q_update(const MacroTransition& t);

  // ceil(max_steps / slots); the last slot may be shorter.
  int slot_length(int max_steps) const;
  bool is_boundary(int step, int max_steps) const { return step % slot_length(max_steps) == 0; }

  const SchedulerConfig& config() const { return config_; }
  SchedulerKind kind() const { return config_.kind; }
  const Eigen::MatrixXd& macro_values() const { return macro_; }

 private:
  SchedulerConfig config_;
  double gamma_e_;
  std::mt19937_64 rng_;
  Eigen::MatrixXd macro_;  // |S| x 2, MacroQ only
};

}  // namespace sfc::sid
