#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sfc::features {
class Embedding;
}

namespace sfc::env {

enum class Action : int { Up = 0, Down = 1, Left = 2, Right = 3 };
inline constexpr int kActionCount = 4;

struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

Cell move(Cell c, Action a);

// Static description of a gridworld. `doorways` is oracle metadata and never
// affects dynamics.
struct GridSpec {
  std::string name;
  int width = 0;
  int height = 0;
  std::set<Cell> walls;
  std::vector<Cell> starts;
  std::map<Cell, double> terminal_rewards;
  std::map<Cell, double> step_rewards;
  int max_steps = 100;
  std::map<std::string, std::vector<Cell>> doorways;

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }
  bool is_open(Cell c) const { return in_bounds(c) && !walls.contains(c); }
  bool is_doorway(Cell c) const;

  // Throws std::invalid_argument when the layout is inconsistent.
  void validate() const;
};

struct EnvState {
  Cell agent;
  int steps_elapsed = 0;
  std::set<Cell> collected;
  bool done = true;
};

enum class ObservationMode { Tabular, Embedding };

struct Observation {
  int state_id = -1;
  Cell cell;
  Eigen::VectorXd features;  // filled in Embedding mode only
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  bool reached_terminal = false;
};

// Deterministic 4-connected gridworld. Tabular state ids enumerate open cells
// row-major, stacked once per number of step-reward cells collected so far.
class GridEnv {
 public:
  explicit GridEnv(GridSpec spec, std::uint64_t seed = 0,
                   ObservationMode mode = ObservationMode::Tabular,
                   std::shared_ptr<const features::Embedding> embedding = nullptr);

  Observation reset();
  StepResult step(Action a);

  const GridSpec& spec() const { return spec_; }
  const EnvState& state() const { return state_; }
  ObservationMode mode() const { return mode_; }
  bool done() const { return state_.done; }

  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_states() const { return num_cells() * (static_cast<int>(spec_.step_rewards.size()) + 1); }

  int cell_index(Cell c) const;  // throws for walls / out-of-bounds
  Cell cell_at(int index) const { return cells_.at(static_cast<std::size_t>(index)); }
  int state_id(Cell c, int collected_count) const;
  Cell cell_of_state(int state_id) const;
  const std::vector<Cell>& open_cells() const { return cells_; }

 private:
  Observation observe() const;

  GridSpec spec_;
  ObservationMode mode_;
  std::shared_ptr<const features::Embedding> embedding_;
  std::vector<Cell> cells_;
  std::map<Cell, int> index_;
  std::mt19937_64 rng_;
  EnvState state_;
};

}  // namespace sfc::env
