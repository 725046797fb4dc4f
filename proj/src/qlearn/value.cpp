#include "sfc/qlearn/value.hpp"

#include <cmath>
#include <stdexcept>

namespace sfc::qlearn {

std::string to_string(Mode m) { return m == Mode::Tabular ? "tabular" : "dense"; }

Mode mode_from_string(const std::string& name) {
  if (name == "tabular") return Mode::Tabular;
  if (name == "dense") return Mode::Dense;
  throw std::invalid_argument("unknown value mode: " + name);
}

ValueApproximator::ValueApproximator(std::variant<TabularQ, DenseQ> impl, int num_states, int num_actions)
    : impl_(std::move(impl)), num_states_(num_states), num_actions_(num_actions) {}

ValueApproximator ValueApproximator::tabular(int num_states, int num_actions, double alpha) {
  if (num_states <= 0 || num_actions <= 0) throw std::invalid_argument("tabular Q needs positive sizes");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha_q must lie in (0, 1]");
  TabularQ t;
  t.alpha = alpha;
  for (auto& table : t.tables) table = Eigen::MatrixXd::Zero(num_states, num_actions);
  return ValueApproximator(std::move(t), num_states, num_actions);
}

ValueApproximator ValueApproximator::dense(std::shared_ptr<const features::Embedding> phi, int num_actions,
                                           double rate, std::uint64_t seed, int hidden) {
  const int n = phi ? phi->num_states() : 0;
  return ValueApproximator(DenseQ(std::move(phi), num_actions, rate, seed, hidden), n, num_actions);
}

void ValueApproximator::check(int s) const {
  if (s < 0 || s >= num_states_) throw std::out_of_range("Q state id out of range");
}

Eigen::VectorXd ValueApproximator::q_values(TaskId head, int s) const {
  check(s);
  if (const auto* t = std::get_if<TabularQ>(&impl_))
    return t->tables[static_cast<std::size_t>(index_of(head))].row(s).transpose();
  return std::get<DenseQ>(impl_).q_values(head, s);
}

double ValueApproximator::q_value(TaskId head, int s, int a) const {
  if (const auto* t = std::get_if<TabularQ>(&impl_)) {
    check(s);
    return t->tables[static_cast<std::size_t>(index_of(head))](s, a);
  }
  return q_values(head, s)(a);
}

int argmax_lowest(const Eigen::VectorXd& v) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i)
    if (v(i) > v(best)) best = i;
  return best;
}

int ValueApproximator::greedy_action(TaskId head, int s) const {
  if (const auto* t = std::get_if<TabularQ>(&impl_)) {
    check(s);
    const auto row = t->tables[static_cast<std::size_t>(index_of(head))].row(s);
    int best = 0;
    for (int a = 1; a < num_actions_; ++a)
      if (row(a) > row(best)) best = a;
    return best;
  }
  return argmax_lowest(q_values(head, s));
}

double ValueApproximator::max_value(TaskId head, int s) const {
  if (const auto* t = std::get_if<TabularQ>(&impl_)) {
    check(s);
    return t->tables[static_cast<std::size_t>(index_of(head))].row(s).maxCoeff();
  }
  return q_values(head, s).maxCoeff();
}

void ValueApproximator::td_update(TaskId head, int s, int a, double target) {
  if (!std::isfinite(target)) throw std::invalid_argument("non-finite TD target");
  check(s);
  if (a < 0 || a >= num_actions_) throw std::out_of_range("action out of range");
  if (auto* t = std::get_if<TabularQ>(&impl_)) {
    double& q = t->tables[static_cast<std::size_t>(index_of(head))](s, a);
    q += t->alpha * (target - q);
    return;
  }
  std::get<DenseQ>(impl_).td_update(head, s, a, target);
}

double k_step_target(const ValueApproximator& online, const ValueApproximator& target, TaskId head,
                     double reward_sum, int s_end, bool done, int k, double gamma) {
  if (done) return reward_sum;
  const int a_star = online.greedy_action(head, s_end);
  return reward_sum + std::pow(gamma, k) * target.q_value(head, s_end, a_star);
}

double epsilon_for_actor(int i, int n, double epsilon_base, double alpha) {
  if (n < 1 || i < 1 || i > n) throw std::out_of_range("actor index must lie in 1..N");
  const double spread = (static_cast<double>(i - 1) * 360.0 / static_cast<double>(n)) / (360.0 - 1.0);
  return std::pow(epsilon_base, 1.0 + spread * alpha);
}

}  // namespace sfc::qlearn
