#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lgp/config.hpp"
#include "lgp/engine.hpp"
#include "lgp/fitness.hpp"
#include "lgp/program.hpp"
#include "lgp/task.hpp"

namespace lgp {

struct BatchOptions {
  int n_experiments = 1;
  std::uint64_t base_seed = 0;
  int threads = 1;  // evaluation-level parallelism inside each run
};

struct ExperimentBatchResult {
  Task task;
  Hyperparameters config;
  std::vector<std::uint64_t> seeds;        // base_seed + i, in run order
  std::vector<GenerationStats> aggregate;  // element-wise mean across runs
  Program best_program;  // top final individual over all runs, earliest seed on ties
  double best_fitness = 0.0;
};

/// Element-wise mean of per-run statistics series. Every run must have the
/// same length; throws std::invalid_argument on empty or ragged input.
std::vector<GenerationStats> aggregate_stats(
    const std::vector<std::vector<GenerationStats>>& runs);

/// n_experiments independent evolve() calls with seeds base_seed + i, run in
/// seed order, statistics averaged per generation. A failing run aborts the
/// batch with its seed named in the error.
ExperimentBatchResult run_batch(const Hyperparameters& h, Task task,
                                const FitnessEvaluator& evaluator,
                                const BatchOptions& options);

/// The evaluator matching a task: dataset accuracy for classification,
/// episode score otherwise, Q-mediated when q_params is configured (ignored
/// for classification, which has no reward signal). iris_csv is only read
/// for the classification task.
std::unique_ptr<FitnessEvaluator> make_evaluator(
    const Hyperparameters& h, Task task,
    const std::filesystem::path& iris_csv);

/// CSV form: header `generation,max,mean,median,min`, one row per generation,
/// 6-decimal fixed values. Byte-identical for identical inputs.
std::string stats_to_csv(const std::vector<GenerationStats>& rows);

void write_stats_csv(const std::vector<GenerationStats>& rows,
                     const std::filesystem::path& path);

/// Reads a file produced by write_stats_csv. Throws std::runtime_error on a
/// missing file, wrong header, or malformed row.
std::vector<GenerationStats> parse_stats_csv(
    const std::filesystem::path& path);

/// FNV-1a 64-bit hex digest of the canonical JSON form of a config; stable
/// identifier for run metadata.
std::string config_digest(const Hyperparameters& h);

/// Run metadata JSON: task, config, config digest, seeds, best fitness.
std::string batch_meta_json(const ExperimentBatchResult& result);

struct ParameterRange {
  std::string field;
  double lo = 0.0;
  double hi = 0.0;
};

/// A random-search space: a complete base config plus per-field sampling
/// ranges. Sampling order follows the file order of `ranges`.
struct SearchSpace {
  Hyperparameters base;
  std::vector<ParameterRange> ranges;
};

/// Parses `{"base": {...}, "ranges": {"field": [lo, hi], ...}}`. Every ranged
/// field must be a known tunable field, lo <= hi, both ends inside the
/// field's admissible range, integer endpoints for integral fields. Throws
/// ConfigError on any violation.
SearchSpace parse_space(const std::string& json_text,
                        std::optional<Task> task = std::nullopt);

SearchSpace load_space(const std::filesystem::path& path,
                       std::optional<Task> task = std::nullopt);

struct TuneTrial {
  int index = 0;
  double objective = 0.0;
  Hyperparameters config;
};

struct TuneResult {
  Hyperparameters best;
  double best_objective = 0.0;
  std::vector<TuneTrial> trials;
};

/// Builds the fitness evaluator for a candidate config; rebuilt per trial so
/// evaluation constants (n_trials, external_factor) track the candidate.
using EvaluatorFactory =
    std::function<std::unique_ptr<FitnessEvaluator>(const Hyperparameters&)>;

/// Uniform random search: budget configs sampled independently per trial,
/// each scored by evolve() under three derived seeds; objective = mean
/// final-generation best fitness. Ties keep the earliest trial.
TuneResult random_search(const SearchSpace& space,
                         const EvaluatorFactory& make_eval, int budget,
                         std::uint64_t seed, int threads = 1);

/// Trial log CSV: `trial,objective,<sampled fields sorted by name>`, one row
/// per trial.
std::string trials_to_csv(const TuneResult& result, const SearchSpace& space);

}  // namespace lgp
