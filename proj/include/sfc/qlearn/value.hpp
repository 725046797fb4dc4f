#pragma once

#include <array>
#include <memory>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "sfc/qlearn/dense.hpp"
#include "sfc/task.hpp"

namespace sfc::qlearn {

enum class Mode { Tabular, Dense };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& name);

struct TabularQ {
  std::array<Eigen::MatrixXd, 2> tables;  // |S| x |A| per head
  double alpha = 0.1;
};

// Two-head action-value function. Copies are independent snapshots, which is
// how actors and the target network hold parameters.
class ValueApproximator {
 public:
  static ValueApproximator tabular(int num_states, int num_actions, double alpha);
  static ValueApproximator dense(std::shared_ptr<const features::Embedding> phi, int num_actions, double rate,
                                 std::uint64_t seed, int hidden = 128);

  Eigen::VectorXd q_values(TaskId head, int s) const;
  double q_value(TaskId head, int s, int a) const;
  // Lowest action index wins ties.
  int greedy_action(TaskId head, int s) const;
  double max_value(TaskId head, int s) const;

  // Throws std::invalid_argument on a non-finite target.
  void td_update(TaskId head, int s, int a, double target);

  Mode mode() const { return std::holds_alternative<TabularQ>(impl_) ? Mode::Tabular : Mode::Dense; }
  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  double gamma(TaskId head) const { return gammas_[static_cast<std::size_t>(index_of(head))]; }
  void set_gamma(TaskId head, double g) { gammas_[static_cast<std::size_t>(index_of(head))] = g; }

  const TabularQ* tabular_impl() const { return std::get_if<TabularQ>(&impl_); }
  TabularQ* tabular_impl() { return std::get_if<TabularQ>(&impl_); }
  const DenseQ* dense_impl() const { return std::get_if<DenseQ>(&impl_); }
  DenseQ* dense_impl() { return std::get_if<DenseQ>(&impl_); }

 private:
  ValueApproximator(std::variant<TabularQ, DenseQ> impl, int num_states, int num_actions);
  void check(int s) const;

  std::variant<TabularQ, DenseQ> impl_;
  int num_states_;
  int num_actions_;
  std::array<double, 2> gammas_{0.99, 0.99};
};

int argmax_lowest(const Eigen::VectorXd& v);

// K-step double-Q target: the online net picks the bootstrap action, the
// target net evaluates it. `reward_sum` is already discounted over the K steps.
double k_step_target(const ValueApproximator& online, const ValueApproximator& target, TaskId head,
                     double reward_sum, int s_end, bool done, int k, double gamma);

// Fixed exploration rate of actor i (1-based) out of n.
double epsilon_for_actor(int i, int n, double epsilon_base = 0.4, double alpha = 7.0);

}  // namespace sfc::qlearn
