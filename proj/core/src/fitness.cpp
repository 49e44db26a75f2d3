#include "lgp/fitness.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace lgp {

double eval_iris(Program& p, const std::vector<LabeledExample>& data,
                 double external_factor) {
  if (data.empty()) {
    throw std::invalid_argument("eval_iris: empty dataset");
  }
  const int n_classes = p.shape().action_registers;
  int correct = 0;
  for (const LabeledExample& example : data) {
    const auto& registers = p.execute(example.features, external_factor);
    if (best_action(registers, n_classes) == example.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

double eval_episodes(Program& p, EpisodicEnvironment& env, int n_trials,
                     double external_factor, RngStream& rng) {
  if (n_trials < 1) {
    throw std::invalid_argument("eval_episodes: n_trials must be positive");
  }
  const int n_actions = env.n_actions();
  double total = 0.0;
  for (int trial = 0; trial < n_trials; ++trial) {
    EnvironmentState state = env.reset(rng);
    double score = 0.0;
    while (true) {
      const auto& registers = p.execute(state, external_factor);
      StepOutcome outcome = env.step(best_action(registers, n_actions));
      score += outcome.reward;
      if (outcome.terminal || outcome.truncated) break;
      state = std::move(outcome.state);
    }
    total += score;
  }
  return total / static_cast<double>(n_trials);
}

GreedyChoice greedy_selection(Program& p, const QTable& q,
                              std::span<const double> state,
                              double external_factor, RngStream& rng) {
  const auto& registers = p.execute(state, external_factor);
  GreedyChoice choice;
  choice.winning_register = argmax_register(registers);
  choice.action = q.best_action(choice.winning_register);
  if (rng.bernoulli(q.epsilon())) {
    choice.action = rng.uniform_below(q.cols());
  }
  return choice;
}

double eval_q_episodes(Program& p, QTable& q, EpisodicEnvironment& env,
                       int n_trials, double external_factor, RngStream& rng,
                       QEpisodeStats* stats) {
  if (n_trials < 1) {
    throw std::invalid_argument("eval_q_episodes: n_trials must be positive");
  }
  double total = 0.0;
  for (int trial = 0; trial < n_trials; ++trial) {
    EnvironmentState state = env.reset(rng);
    GreedyChoice current = greedy_selection(p, q, state, external_factor, rng);
    double score = 0.0;
    while (true) {
      StepOutcome outcome = env.step(current.action);
      score += outcome.reward;
      if (stats != nullptr) ++stats->steps;
      if (outcome.terminal || outcome.truncated) break;
      GreedyChoice next =
          greedy_selection(p, q, outcome.state, external_factor, rng);
      if (next.winning_register != current.winning_register) {
        q.update(current.winning_register, current.action, outcome.reward,
                 next.winning_register);
        if (stats != nullptr) ++stats->register_changes;
      }
      current = next;
    }
    q.decay();
    if (stats != nullptr) ++stats->episodes;
    total += score;
  }
  return total / static_cast<double>(n_trials);
}

IrisEvaluator::IrisEvaluator(std::vector<LabeledExample> data,
                             const Hyperparameters& h)
    : data_(std::move(data)), h_(h) {
  int max_label = -1;
  for (const LabeledExample& example : data_) {
    max_label = std::max(max_label, example.label);
  }
  n_classes_ = max_label + 1;
}

double IrisEvaluator::evaluate(Individual& ind, RngStream&) const {
  const ProgramShape& shape = ind.program.shape();
  if (shape.input_width != 4 || shape.action_registers != n_classes_) {
    return h_.default_fitness;
  }
  return eval_iris(ind.program, data_, h_.external_factor);
}

EpisodeEvaluator::EpisodeEvaluator(EnvFactory make_env,
                                   const Hyperparameters& h)
    : make_env_(std::move(make_env)), h_(h) {}

double EpisodeEvaluator::evaluate(Individual& ind, RngStream& rng) const {
  std::unique_ptr<EpisodicEnvironment> env = make_env_();
  const ProgramShape& shape = ind.program.shape();
  if (shape.input_width != env->n_inputs() ||
      shape.action_registers != env->n_actions()) {
    return h_.default_fitness;
  }
  return eval_episodes(ind.program, *env, h_.n_trials, h_.external_factor,
                       rng);
}

QLearningEvaluator::QLearningEvaluator(EnvFactory make_env,
                                       const Hyperparameters& h)
    : make_env_(std::move(make_env)), h_(h) {}

double QLearningEvaluator::evaluate(Individual& ind, RngStream& rng) const {
  if (!ind.q_table.has_value()) {
    throw std::logic_error(
        "q-learning evaluation requires an individual with a QTable");
  }
  std::unique_ptr<EpisodicEnvironment> env = make_env_();
  const ProgramShape& shape = ind.program.shape();
  if (shape.input_width != env->n_inputs() ||
      ind.q_table->rows() != shape.register_count() ||
      ind.q_table->cols() != env->n_actions()) {
    return h_.default_fitness;
  }
  return eval_q_episodes(ind.program, *ind.q_table, *env, h_.n_trials,
                         h_.external_factor, rng);
}

}  // namespace lgp
