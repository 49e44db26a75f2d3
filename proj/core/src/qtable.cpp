#include "lgp/qtable.hpp"

#include <algorithm>
#include <cassert>

namespace lgp {

QTable::QTable(int n_registers, int n_actions, const QParams& params)
    : n_registers_(n_registers),
      n_actions_(n_actions),
      values_(static_cast<std::size_t>(n_registers) *
                  static_cast<std::size_t>(n_actions),
              0.0),
      params_(params),
      alpha_(params.alpha),
      epsilon_(params.epsilon) {
  assert(n_registers >= 1 && n_actions >= 1);
}

double QTable::value(int reg, int action) const {
  assert(reg >= 0 && reg < n_registers_ && action >= 0 && action < n_actions_);
  return values_[static_cast<std::size_t>(reg) *
                     static_cast<std::size_t>(n_actions_) +
                 static_cast<std::size_t>(action)];
}

std::span<const double> QTable::row(int reg) const {
  assert(reg >= 0 && reg < n_registers_);
  return {values_.data() + static_cast<std::size_t>(reg) *
                               static_cast<std::size_t>(n_actions_),
          static_cast<std::size_t>(n_actions_)};
}

int QTable::best_action(int reg) const {
  const auto r = row(reg);
  return static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());
}

void QTable::update(int state_register, int action, double reward,
                    int next_state_register) {
  const auto next = row(next_state_register);
  const double max_next = *std::max_element(next.begin(), next.end());
  double& cell = values_[static_cast<std::size_t>(state_register) *
                             static_cast<std::size_t>(n_actions_) +
                         static_cast<std::size_t>(action)];
  cell += alpha_ * (reward + params_.gamma * max_next - cell);
  ++update_count_;
}

void QTable::decay() {
  alpha_ *= params_.alpha_decay;
  epsilon_ *= params_.epsilon_decay;
}

}  // namespace lgp
