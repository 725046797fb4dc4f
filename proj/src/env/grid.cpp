#include "sfc/env/grid.hpp"

#include <deque>
#include <stdexcept>

#include "sfc/features/embedding.hpp"

namespace sfc::env {

Cell move(Cell c, Action a) {
  switch (a) {
    case Action::Up: return {c.x, c.y - 1};
    case Action::Down: return {c.x, c.y + 1};
    case Action::Left: return {c.x - 1, c.y};
    case Action::Right: return {c.x + 1, c.y};
  }
  return c;
}

bool GridSpec::is_doorway(Cell c) const {
  for (const auto& [label, cells] : doorways)
    for (const Cell& d : cells)
      if (d == c) return true;
  return false;
}

void GridSpec::validate() const {
  if (width <= 0 || height <= 0) throw std::invalid_argument(name + ": empty grid");
  if (max_steps <= 0) throw std::invalid_argument(name + ": max_steps must be positive");
  if (starts.empty()) throw std::invalid_argument(name + ": no start cell");
  for (const Cell& s : starts)
    if (!is_open(s)) throw std::invalid_argument(name + ": start cell is blocked");

  std::set<Cell> reached(starts.begin(), starts.end());
  std::deque<Cell> frontier(starts.begin(), starts.end());
  while (!frontier.empty()) {
    Cell c = frontier.front();
    frontier.pop_front();
    if (terminal_rewards.contains(c)) continue;
    for (int a = 0; a < 4; ++a) {
      Cell n = move(c, static_cast<Action>(a));
      if (is_open(n) && reached.insert(n).second) frontier.push_back(n);
    }
  }
  auto check = [&](const std::map<Cell, double>& cells) {
    for (const auto& [c, r] : cells) {
      if (!is_open(c)) throw std::invalid_argument(name + ": reward cell is blocked");
      if (!reached.contains(c)) throw std::invalid_argument(name + ": reward cell unreachable from start");
    }
  };
  check(terminal_rewards);
  check(step_rewards);
}

GridEnv::GridEnv(GridSpec spec, std::uint64_t seed, ObservationMode mode,
                 std::shared_ptr<const features::Embedding> embedding)
    : spec_(std::move(spec)), mode_(mode), embedding_(std::move(embedding)), rng_(seed) {
  spec_.validate();
  for (int y = 0; y < spec_.height; ++y)
    for (int x = 0; x < spec_.width; ++x)
      if (spec_.is_open({x, y})) {
        index_[{x, y}] = static_cast<int>(cells_.size());
        cells_.push_back({x, y});
      }
  if (mode_ == ObservationMode::Embedding) {
    if (!embedding_) throw std::invalid_argument("embedding mode requires an embedding");
    if (embedding_->num_states() != num_states())
      throw std::invalid_argument("embedding size does not match state count");
  }
  state_.agent = spec_.starts.front();
}

int GridEnv::cell_index(Cell c) const {
  auto it = index_.find(c);
  if (it == index_.end()) throw std::invalid_argument("cell is not an open cell");
  return it->second;
}

int GridEnv::state_id(Cell c, int collected_count) const {
  if (collected_count < 0 || collected_count > static_cast<int>(spec_.step_rewards.size()))
    throw std::invalid_argument("collected count out of range");
  return cell_index(c) + num_cells() * collected_count;
}

Cell GridEnv::cell_of_state(int state_id) const {
  if (state_id < 0 || state_id >= num_states()) throw std::out_of_range("state id out of range");
  return cells_[static_cast<std::size_t>(state_id % num_cells())];
}

Observation GridEnv::observe() const {
  Observation obs;
  obs.cell = state_.agent;
  obs.state_id = state_id(state_.agent, static_cast<int>(state_.collected.size()));
  if (mode_ == ObservationMode::Embedding) obs.features = embedding_->embed(obs.state_id);
  return obs;
}

Observation GridEnv::reset() {
  std::uniform_int_distribution<std::size_t> pick(0, spec_.starts.size() - 1);
  state_ = EnvState{};
  state_.agent = spec_.starts.size() == 1 ? spec_.starts.front() : spec_.starts[pick(rng_)];
  state_.done = false;
  return observe();
}

StepResult GridEnv::step(Action a) {
  if (state_.done) throw std::logic_error("step called on a finished episode");
  Cell next = move(state_.agent, a);
  if (spec_.is_open(next)) state_.agent = next;

  StepResult out;
  const Cell here = state_.agent;
  if (auto it = spec_.step_rewards.find(here);
      it != spec_.step_rewards.end() && state_.collected.insert(here).second)
    out.reward += it->second;
  if (auto it = spec_.terminal_rewards.find(here); it != spec_.terminal_rewards.end()) {
    out.reward += it->second;
    out.reached_terminal = true;
    state_.done = true;
  }
  ++state_.steps_elapsed;
  if (state_.steps_elapsed >= spec_.max_steps) state_.done = true;
  out.done = state_.done;
  out.observation = observe();
  return out;
}

}  // namespace sfc::env
