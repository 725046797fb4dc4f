#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sfc/env/grid.hpp"

// Exact oracles over a GridEnv. Used by tests and evaluation only; agents never
// see them.
namespace sfc::env {

// Row i: action distribution (Up, Down, Left, Right) at open cell i.
using Policy = Eigen::MatrixXd;

Policy uniform_policy(const GridEnv& env);
Policy uniform_policy(const GridEnv& env, const std::vector<Action>& actions);

// Cell-level Markov chain under `policy`. Step-reward cells are ignored and
// terminal cells are absorbing. Rejected in Embedding observation mode.
Eigen::MatrixXd transition_matrix(const GridEnv& env, const Policy& policy);

// BFS distances from `from` to every open cell (index order); -1 = unreachable.
std::vector<int> bfs_distances(const GridEnv& env, Cell from);

// nullopt means unreachable. Wall cells are rejected.
std::optional<int> shortest_path_distance(const GridEnv& env, Cell from, Cell to);

// Connected components of open cells with doorway cells removed, indexed like
// open_cells(). Doorway cells get -1.
std::vector<int> room_labels(const GridEnv& env);

}  // namespace sfc::env
