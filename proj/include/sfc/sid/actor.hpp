#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "sfc/env/grid.hpp"
#include "sfc/intrinsic/running_stats.hpp"
#include "sfc/qlearn/value.hpp"
#include "sfc/replay/buffer.hpp"
#include "sfc/sid/scheduler.hpp"

namespace sfc::sid {

// What an actor acts on: a frozen copy of the learner's Q-function together
// with the extrinsic reward scale that was current when it was taken.
struct Snapshot {
  qlearn::ValueApproximator q;
  double extrinsic_scale = 1.0;
  std::int64_t learner_step = 0;
};

struct EpisodeStats {
  int steps = 0;
  double extrinsic_return = 0.0;
  std::array<int, 2> task_steps{0, 0};
  bool success = false;
  std::string task_sequence;  // one letter per slot
  int transitions = 0;
};

struct ActorOptions {
  AgentKind agent = AgentKind::Sid;
  int k = 5;
  double gamma_e = 0.99;
};

class Actor {
 public:
  // `scheduler` is required for SID agents and ignored otherwise.
  Actor(int index, env::GridEnv env, double epsilon, std::optional<Scheduler> scheduler, ActorOptions options,
        std::uint64_t seed);

  EpisodeStats run_episode(const Snapshot& snapshot, replay::TwoTierBuffer& sink);

  int index() const { return index_; }
  double epsilon() const { return epsilon_; }
  const env::GridEnv& env() const { return env_; }
  const std::optional<Scheduler>& scheduler() const { return scheduler_; }

 private:
  struct Step {
    int s = 0;
    int a = 0;
    double r = 0.0;
    int s_next = 0;
    int index = 0;
  };

  int choose_action(const Snapshot& snapshot, TaskId head, int s);
  void emit(const Snapshot& snapshot, replay::TwoTierBuffer& sink, const std::vector<Step>& window, int s_end,
            bool done, EpisodeStats& stats);

  int index_;
  env::GridEnv env_;
  double epsilon_;
  std::optional<Scheduler> scheduler_;
  ActorOptions options_;
  std::mt19937_64 rng_;
  intrinsic::RunningStats q_at_boundaries_;
  std::int64_t episodes_ = 0;
};

}  // namespace sfc::sid
