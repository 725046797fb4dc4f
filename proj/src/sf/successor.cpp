#include "sfc/sf/successor.hpp"

#include <cmath>
#include <stdexcept>

namespace sfc::sf {

std::string to_string(Convention c) {
  return c == Convention::IncludeCurrent ? "include_current" : "next_state_only";
}

Convention convention_from_string(const std::string& name) {
  if (name == "include_current") return Convention::IncludeCurrent;
  if (name == "next_state_only") return Convention::NextStateOnly;
  throw std::invalid_argument("unknown SF convention: " + name);
}

SfTable::SfTable(std::shared_ptr<const features::Embedding> phi, double gamma, double alpha,
                 Convention convention)
    : phi_(std::move(phi)), gamma_(gamma), alpha_(alpha), convention_(convention) {
  if (!phi_) throw std::invalid_argument("SfTable needs an embedding");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma_sf must lie in (0, 1)");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha_sf must be non-negative");
  table_ = SfMatrix::Zero(phi_->num_states(), phi_->dim());
  scratch_.resize(phi_->dim());
}

void SfTable::check_state(int s) const {
  if (s < 0 || s >= num_states()) throw std::out_of_range("SF state id out of range");
}

void SfTable::td_update(int s, int s_next, double alpha) {
  check_state(s);
  check_state(s_next);
  const int cue = convention_ == Convention::IncludeCurrent ? s : s_next;
  scratch_.noalias() = gamma_ * table_.row(s_next);
  phi_->accumulate(cue, scratch_);
  table_.row(s) += alpha * (scratch_ - table_.row(s));
}

double SfTable::distance(int s, int s_prime) const {
  check_state(s);
  check_state(s_prime);
  return successor_distance(table_, s, s_prime);
}

double SfTable::sfc_reward(int s_t, int s_t_plus_k) const {
  check_state(s_t);
  check_state(s_t_plus_k);
  return (table_.row(s_t_plus_k) - table_.row(s_t)).squaredNorm();
}

AnalyticSr analytic_sr(const Eigen::MatrixXd& transitions, const Eigen::MatrixXd& phi_rows, double gamma,
                       Convention convention) {
  const auto n = transitions.rows();
  if (transitions.cols() != n || phi_rows.rows() != n)
    throw std::invalid_argument("analytic_sr: shape mismatch");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("analytic_sr: gamma must lie in [0, 1)");
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(transitions.row(i).sum() - 1.0) > 1e-9 || transitions.row(i).minCoeff() < 0.0)
      throw std::invalid_argument("analytic_sr: P is not row-stochastic");

  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - gamma * transitions;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible()) throw std::runtime_error("analytic_sr: singular system");

  AnalyticSr out;
  out.psi = lu.solve(phi_rows);
  if (convention == Convention::NextStateOnly) out.psi = transitions * out.psi;
  out.metric = out.psi * out.psi.transpose();
  return out;
}

double successor_distance(const Eigen::MatrixXd& psi, int s, int s_prime) {
  return (psi.row(s) - psi.row(s_prime)).norm();
}

}  // namespace sfc::sf
