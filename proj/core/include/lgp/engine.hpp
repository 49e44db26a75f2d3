#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lgp/config.hpp"
#include "lgp/program.hpp"
#include "lgp/qtable.hpp"
#include "lgp/random.hpp"

namespace lgp {

/// A candidate solution: a program, its fitness once evaluated this
/// generation, and (Q-learning runs only) its action-value table.
struct Individual {
  Program program;
  std::optional<double> fitness;
  std::optional<QTable> q_table;
};

using Population = std::vector<Individual>;

/// Scores one individual. Implementations own no mutable state shared between
/// calls; each call receives the individual and an rng stream exclusively.
class FitnessEvaluator {
 public:
  virtual ~FitnessEvaluator() = default;

  /// Returns the fitness score. A non-finite return means the evaluation
  /// failed; the engine substitutes default_fitness.
  virtual double evaluate(Individual& individual, RngStream& rng) const = 0;

  /// True when scores vary between evaluations (episodic tasks, learned
  /// state). Stochastic evaluators re-score survivors every generation;
  /// deterministic ones keep cached fitness.
  virtual bool stochastic() const = 0;
};

struct GenerationStats {
  int generation = 0;
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
};

/// population_size fresh random individuals, fitness unset; zeroed Q-tables
/// attached when the config carries q_params.
Population initialize_population(const Hyperparameters& h, RngStream& rng);

/// Sorts by fitness, best first. Stable: ties keep their relative order.
/// Throws std::logic_error if any individual is unevaluated.
void rank(Population& pop);

/// Drops the worst floor(gap * size) individuals of a ranked population.
void survive(Population& pop, double gap);

/// Draws k individuals uniformly with replacement and returns the fittest;
/// on ties the earliest drawn wins. Throws std::invalid_argument on an empty
/// population.
const Individual& tournament_select(const Population& pop, int k,
                                    RngStream& rng);

/// Refills survivors back up to population_size: round(crossover_percent * d)
/// crossover children, round(mutation_percent * d) mutants, clones for the
/// remainder, all parented by binary-tournament winners. Offspring have unset
/// fitness and fresh zeroed Q-tables.
void refill(Population& pop, const Hyperparameters& h, RngStream& rng);

/// Per-generation fitness summary of an evaluated population (empty -> zeros).
GenerationStats summarize(const Population& pop, int generation);

struct EvolveResult {
  Population population;                // final cohort, evaluated and ranked
  std::vector<GenerationStats> stats;   // one row per generation
};

/// The full generational loop. Evaluates and ranks generation 0, then for each
/// later generation applies survive + refill and re-evaluates. Every cohort
/// that exists is evaluated, including the last; the stats series has exactly
/// n_generations rows. Fully deterministic in (h, seed): each individual's
/// evaluation uses a stream derived from (seed, generation, index), so
/// parallel and serial schedules give identical results.
EvolveResult evolve(const Hyperparameters& h, const FitnessEvaluator& evaluator,
                    std::uint64_t seed, int threads = 1);

}  // namespace lgp
