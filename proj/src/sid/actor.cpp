#include "sfc/sid/actor.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace sfc::sid {

Actor::Actor(int index, env::GridEnv env, double epsilon, std::optional<Scheduler> scheduler,
             ActorOptions options, std::uint64_t seed)
    : index_(index), env_(std::move(env)), epsilon_(epsilon), scheduler_(std::move(scheduler)),
      options_(options), rng_(seed) {
  if (options_.k < 1) throw std::invalid_argument("K must be positive");
  if (options_.agent == AgentKind::Sid && !scheduler_) throw std::invalid_argument("SID actor needs a scheduler");
}

int Actor::choose_action(const Snapshot& snapshot, TaskId head, int s) {
  if (std::bernoulli_distribution(epsilon_)(rng_))
    return std::uniform_int_distribution<int>(0, env::kActionCount - 1)(rng_);
  return snapshot.q.greedy_action(head, s);
}

void Actor::emit(const Snapshot& snapshot, replay::TwoTierBuffer& sink, const std::vector<Step>& window,
                 int s_end, bool done, EpisodeStats& stats) {
  replay::Transition t;
  t.s_start = window.front().s;
  t.a_start = window.front().a;
  double discount = 1.0;
  for (const Step& st : window) {
    t.discounted_reward_sum += discount * st.r;
    discount *= options_.gamma_e;
  }
  t.steps = static_cast<int>(window.size());
  t.s_end = s_end;
  t.done = done;
  t.pair_s = window.front().s;
  t.pair_s_next = window.front().s_next;
  t.episode_id = episodes_;
  t.step_index = window.front().index;

  const double scaled = t.discounted_reward_sum * snapshot.extrinsic_scale;
  const double target = qlearn::k_step_target(snapshot.q, snapshot.q, TaskId::Extrinsic, scaled, t.s_end, t.done,
                                              t.steps, options_.gamma_e);
  const double td = std::abs(target - snapshot.q.q_value(TaskId::Extrinsic, t.s_start, t.a_start));
  sink.push(t, std::isfinite(td) ? td : 0.0);
  ++stats.transitions;
}

EpisodeStats Actor::run_episode(const Snapshot& snapshot, replay::TwoTierBuffer& sink) {
  EpisodeStats stats;
  env::Observation obs = env_.reset();
  const int max_steps = env_.spec().max_steps;
  const bool scheduled = options_.agent == AgentKind::Sid;

  std::deque<Step> queue;
  TaskId task = TaskId::Extrinsic;
  int slot = 0;
  // MacroQ bookkeeping for the slot in progress.
  int slot_start_state = obs.state_id;
  double slot_return = 0.0;
  double slot_discount = 1.0;
  int slot_steps = 0;

  auto close_slot = [&](int s_to, bool done) {
    if (scheduled && scheduler_->kind() == SchedulerKind::MacroQ && slot_steps > 0)
      scheduler_->macro_q_update({slot_start_state, s_to, task, slot_return, slot_steps, done});
  };

  for (int t = 0; !env_.done(); ++t) {
    if (scheduled && scheduler_->is_boundary(t, max_steps)) {
      if (t > 0) close_slot(obs.state_id, false);
      SchedulerContext ctx;
      ctx.q_extrinsic_value_at_state = snapshot.q.max_value(TaskId::Extrinsic, obs.state_id);
      ctx.running_q_mean = q_at_boundaries_.mean();
      ctx.slot_index = slot++;
      ctx.state_id = obs.state_id;
      task = scheduler_->next_task(ctx);
      q_at_boundaries_.push(ctx.q_extrinsic_value_at_state);
      stats.task_sequence.push_back(task_letter(task));
      slot_start_state = obs.state_id;
      slot_return = 0.0;
      slot_discount = 1.0;
      slot_steps = 0;
    }

    const int a = choose_action(snapshot, task, obs.state_id);
    const env::StepResult r = env_.step(static_cast<env::Action>(a));
    queue.push_back({obs.state_id, a, r.reward, r.observation.state_id, t});
    ++stats.task_steps[static_cast<std::size_t>(index_of(task))];
    ++stats.steps;
    stats.extrinsic_return += r.reward;
    stats.success = stats.success || r.reached_terminal;
    slot_return += slot_discount * r.reward;
    slot_discount *= options_.gamma_e;
    ++slot_steps;
    obs = r.observation;

    if (static_cast<int>(queue.size()) == options_.k) {
      emit(snapshot, sink, {queue.begin(), queue.end()}, obs.state_id, r.done, stats);
      queue.pop_front();
    }
    if (r.done) {
      while (!queue.empty()) {
        emit(snapshot, sink, {queue.begin(), queue.end()}, obs.state_id, true, stats);
        queue.pop_front();
      }
    }
  }
  close_slot(obs.state_id, true);
  ++episodes_;
  return stats;
}

}  // namespace sfc::sid
