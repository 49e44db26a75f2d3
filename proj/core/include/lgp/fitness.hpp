#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "lgp/config.hpp"
#include "lgp/engine.hpp"
#include "lgp/environments.hpp"
#include "lgp/program.hpp"
#include "lgp/qtable.hpp"
#include "lgp/random.hpp"

namespace lgp {

/// Classification accuracy in [0, 1]: execute the program on each example,
/// predict the class whose action register is largest, count matches.
/// Throws std::invalid_argument on an empty dataset.
double eval_iris(Program& p, const std::vector<LabeledExample>& data,
                 double external_factor);

/// Mean total reward over n_trials episodes. Each step executes the program
/// on the current observation and acts on the action-register argmax.
double eval_episodes(Program& p, EpisodicEnvironment& env, int n_trials,
                     double external_factor, RngStream& rng);

struct GreedyChoice {
  int winning_register = 0;
  int action = 0;
};

/// One state/action selection: execute the program, take the argmax over the
/// FULL register file (not just the action prefix) as the winning register,
/// then the Q-greedy action for that register's row. With probability
/// q.epsilon() the action is replaced by a uniform draw. Ties break low.
GreedyChoice greedy_selection(Program& p, const QTable& q,
                              std::span<const double> state,
                              double external_factor, RngStream& rng);

/// Instrumentation for Q-mediated evaluation; register_changes counts
/// consecutive-step transitions whose winning register moved, which must
/// equal the number of Q-updates applied.
struct QEpisodeStats {
  std::uint64_t steps = 0;
  std::uint64_t register_changes = 0;
  std::uint64_t episodes = 0;
};

/// Mean total reward over n_trials episodes with Q-mediated action choice.
/// The table learns online: one temporal-difference update per winning-register
/// change (reward observed between the two selections), no update on the
/// terminal transition, decay once per episode. The table is mutated in place
/// and so persists across the trials of one evaluation.
double eval_q_episodes(Program& p, QTable& q, EpisodicEnvironment& env,
                       int n_trials, double external_factor, RngStream& rng,
                       QEpisodeStats* stats = nullptr);

using EnvFactory = std::function<std::unique_ptr<EpisodicEnvironment>()>;

/// Dataset accuracy as fitness. Deterministic, so the engine caches scores
/// for survivors.
class IrisEvaluator final : public FitnessEvaluator {
 public:
  IrisEvaluator(std::vector<LabeledExample> data, const Hyperparameters& h);

  double evaluate(Individual& ind, RngStream& rng) const override;
  bool stochastic() const override { return false; }

 private:
  std::vector<LabeledExample> data_;
  Hyperparameters h_;
  int n_classes_;
};

/// Episode score as fitness; a fresh environment per evaluation so concurrent
/// evaluations never share state.
class EpisodeEvaluator final : public FitnessEvaluator {
 public:
  EpisodeEvaluator(EnvFactory make_env, const Hyperparameters& h);

  double evaluate(Individual& ind, RngStream& rng) const override;
  bool stochastic() const override { return true; }

 private:
  EnvFactory make_env_;
  Hyperparameters h_;
};

/// Episode score with the individual's QTable mediating action choice and
/// learning online during the evaluation. Requires the individual to carry a
/// table (the engine attaches one when q_params is configured).
class QLearningEvaluator final : public FitnessEvaluator {
 public:
  QLearningEvaluator(EnvFactory make_env, const Hyperparameters& h);

  double evaluate(Individual& ind, RngStream& rng) const override;
  bool stochastic() const override { return true; }

 private:
  EnvFactory make_env_;
  Hyperparameters h_;
};

}  // namespace lgp
