#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lgp/config.hpp"

namespace lgp {

/// Action-value table indexed by (winning register, action). Rows cover the
/// whole register file, columns the discrete actions. Starts at all zeros;
/// alpha and epsilon only ever decrease (multiplicative decay after each
/// episode).
class QTable {
 public:
  QTable(int n_registers, int n_actions, const QParams& params);

  int rows() const { return n_registers_; }
  int cols() const { return n_actions_; }

  double value(int reg, int action) const;
  std::span<const double> row(int reg) const;

  /// Argmax over one row; ties break to the lowest action index.
  int best_action(int reg) const;

  /// One temporal-difference step:
  ///   q[s][a] += alpha * (reward + gamma * max(q[s']) - q[s][a])
  /// Exactly one cell changes.
  void update(int state_register, int action, double reward,
              int next_state_register);

  /// End-of-episode decay: alpha *= alpha_decay, epsilon *= epsilon_decay.
  void decay();

  double alpha() const { return alpha_; }
  double epsilon() const { return epsilon_; }
  double gamma() const { return params_.gamma; }

  /// Total update() calls since construction (instrumentation).
  std::uint64_t update_count() const { return update_count_; }

  bool operator==(const QTable& other) const {
    return n_registers_ == other.n_registers_ &&
           n_actions_ == other.n_actions_ && values_ == other.values_;
  }

 private:
  int n_registers_;
  int n_actions_;
  std::vector<double> values_;  // row-major
  QParams params_;
  double alpha_;
  double epsilon_;
  std::uint64_t update_count_ = 0;
};

}  // namespace lgp
