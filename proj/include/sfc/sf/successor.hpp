#pragma once

#include <memory>
#include <string>

#include <Eigen/Dense>

#include "sfc/features/embedding.hpp"

namespace sfc::sf {

// Which fixed point the TD update targets.
//   IncludeCurrent: psi(s) = phi(s) + gamma * E[psi(s')]
//   NextStateOnly:  psi(s) = E[phi(s') + gamma * psi(s')]
enum class Convention { IncludeCurrent, NextStateOnly };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& name);

// Row-major so each state's features are contiguous.
using SfMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Tabular successor features, one row per state. Rows start at zero.
class SfTable {
 public:
  SfTable(std::shared_ptr<const features::Embedding> phi, double gamma, double alpha,
          Convention convention = Convention::NextStateOnly);

  void td_update(int s, int s_next) { td_update(s, s_next, alpha_); }
  void td_update(int s, int s_next, double alpha);

  Eigen::VectorXd psi(int s) const { return table_.row(s).transpose(); }
  const SfMatrix& table() const { return table_; }
  SfMatrix& mutable_table() { return table_; }

  double distance(int s, int s_prime) const;
  // Squared successor distance between s_t and s_{t+k}; k = 1 or K.
  double sfc_reward(int s_t, int s_t_plus_k) const;

  double gamma() const { return gamma_; }
  double alpha() const { return alpha_; }
  Convention convention() const { return convention_; }
  const features::Embedding& embedding() const { return *phi_; }
  int num_states() const { return static_cast<int>(table_.rows()); }

 private:
  void check_state(int s) const;

  std::shared_ptr<const features::Embedding> phi_;
  SfMatrix table_;
  Eigen::RowVectorXd scratch_;
  double gamma_;
  double alpha_;
  Convention convention_;
};

struct AnalyticSr {
  Eigen::MatrixXd psi;     // |S| x m, row s = psi(s)
  Eigen::MatrixXd metric;  // |S| x |S|, W = psi * psi^T
};

// Closed-form successor features for a fixed row-stochastic P.
AnalyticSr analytic_sr(const Eigen::MatrixXd& transitions, const Eigen::MatrixXd& phi_rows, double gamma,
                       Convention convention);

double successor_distance(const Eigen::MatrixXd& psi, int s, int s_prime);

}  // namespace sfc::sf
