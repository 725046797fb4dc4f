#include "sfc/env/oracles.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace sfc::env {

Policy uniform_policy(const GridEnv& env) {
  return Policy::Constant(env.num_cells(), kActionCount, 1.0 / kActionCount);
}

Policy uniform_policy(const GridEnv& env, const std::vector<Action>& actions) {
  if (actions.empty()) throw std::invalid_argument("policy needs at least one action");
  Policy p = Policy::Zero(env.num_cells(), kActionCount);
  for (Action a : actions) p.col(static_cast<int>(a)).array() += 1.0 / static_cast<double>(actions.size());
  return p;
}

Eigen::MatrixXd transition_matrix(const GridEnv& env, const Policy& policy) {
  if (env.mode() != ObservationMode::Tabular)
    throw std::logic_error("transition_matrix requires tabular observations");
  const int n = env.num_cells();
  if (policy.rows() != n || policy.cols() != kActionCount)
    throw std::invalid_argument("policy shape must be cells x actions");
  const GridSpec& spec = env.spec();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Cell c = env.cell_at(i);
    if (std::abs(policy.row(i).sum() - 1.0) > 1e-9) throw std::invalid_argument("policy row does not sum to 1");
    if (spec.terminal_rewards.contains(c)) {
      p(i, i) = 1.0;
      continue;
    }
    for (int a = 0; a < kActionCount; ++a) {
      Cell next = move(c, static_cast<Action>(a));
      if (!spec.is_open(next)) next = c;
      p(i, env.cell_index(next)) += policy(i, a);
    }
  }
  return p;
}

std::vector<int> bfs_distances(const GridEnv& env, Cell from) {
  std::vector<int> dist(static_cast<std::size_t>(env.num_cells()), -1);
  const int src = env.cell_index(from);
  dist[static_cast<std::size_t>(src)] = 0;
  std::deque<Cell> frontier{from};
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop_front();
    const int d = dist[static_cast<std::size_t>(env.cell_index(c))];
    for (int a = 0; a < kActionCount; ++a) {
      const Cell n = move(c, static_cast<Action>(a));
      if (!env.spec().is_open(n)) continue;
      int& dn = dist[static_cast<std::size_t>(env.cell_index(n))];
      if (dn < 0) {
        dn = d + 1;
        frontier.push_back(n);
      }
    }
  }
  return dist;
}

std::optional<int> shortest_path_distance(const GridEnv& env, Cell from, Cell to) {
  if (!env.spec().is_open(from) || !env.spec().is_open(to))
    throw std::invalid_argument("shortest_path_distance on a wall cell");
  const int d = bfs_distances(env, from)[static_cast<std::size_t>(env.cell_index(to))];
  if (d < 0) return std::nullopt;
  return d;
}

std::vector<int> room_labels(const GridEnv& env) {
  const GridSpec& spec = env.spec();
  std::vector<int> label(static_cast<std::size_t>(env.num_cells()), -2);
  int next_label = 0;
  for (int i = 0; i < env.num_cells(); ++i) {
    const Cell seed = env.cell_at(i);
    if (spec.is_doorway(seed)) {
      label[static_cast<std::size_t>(i)] = -1;
      continue;
    }
    if (label[static_cast<std::size_t>(i)] != -2) continue;
    std::deque<Cell> frontier{seed};
    label[static_cast<std::size_t>(i)] = next_label;
    while (!frontier.empty()) {
      const Cell c = frontier.front();
      frontier.pop_front();
      for (int a = 0; a < kActionCount; ++a) {
        const Cell n = move(c, static_cast<Action>(a));
        if (!spec.is_open(n) || spec.is_doorway(n)) continue;
        int& ln = label[static_cast<std::size_t>(env.cell_index(n))];
        if (ln == -2) {
          ln = next_label;
          frontier.push_back(n);
        }
      }
    }
    ++next_label;
  }
  return label;
}

}  // namespace sfc::env
