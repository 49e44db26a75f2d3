#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgp/task.hpp"

namespace lgp {

/// Q-learning constants. Present on a run iff that run evaluates fitness
/// through the Q-learning engine.
struct QParams {
  double alpha = 0.1;
  double gamma = 0.9;
  double epsilon = 0.05;
  double alpha_decay = 1.0;
  double epsilon_decay = 1.0;

  bool operator==(const QParams&) const = default;
};

/// The full run configuration. Field names match the JSON schema one-to-one.
struct Hyperparameters {
  double default_fitness = 0.0;     // assigned when an evaluation fails
  int population_size = 100;
  double gap = 0.5;                 // fraction replaced each generation
  double mutation_percent = 0.25;   // share of offspring made by mutation
  double crossover_percent = 0.5;   // share of offspring made by crossover
  int n_generations = 100;
  int n_trials = 5;                 // episodes averaged per fitness evaluation
  std::optional<std::uint64_t> seed;
  int max_instructions = 12;
  int n_extras = 1;                 // working registers
  double external_factor = 1.0;     // input amplification
  int n_actions = 2;                // action registers / discrete actions
  int n_inputs = 4;                 // observation feature width
  std::optional<QParams> q_params;

  bool operator==(const Hyperparameters&) const = default;
};

struct ConfigViolation {
  std::string field;
  std::string message;  // includes the offending value
};

struct ValidationReport {
  std::vector<ConfigViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every field against its admissible range plus the cross-field rule
/// mutation_percent + crossover_percent <= 1. One entry per violation.
ValidationReport validate(const Hyperparameters& h);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a JSON document into a Hyperparameters record. Unknown keys and type
/// mismatches throw ConfigError. Q-learning constants may appear either inside
/// a "q_params" object or as flat top-level keys; both land in q_params.
/// When a task is given, n_inputs/n_actions default to the task's widths and
/// are checked against them. Range violations are NOT checked here; call
/// validate() (load_config does both).
Hyperparameters parse_config(const std::string& json_text,
                             std::optional<Task> task = std::nullopt);

/// Merges an overlay document over a base record: top-level fields override,
/// q-learning fields merge into q_params field by field.
Hyperparameters merge_overlay(const Hyperparameters& base,
                              const std::string& overlay_json_text);

/// Loads, merges the optional overlay file, validates. Throws ConfigError on a
/// missing file, malformed syntax, unknown field, or any range violation (the
/// message names the field and the offending value).
Hyperparameters load_config(
    const std::filesystem::path& path, std::optional<Task> task = std::nullopt,
    const std::optional<std::filesystem::path>& overlay = std::nullopt);

/// Serializes to JSON with the schema's field names. Round-trips exactly:
/// parse_config(to_json(h)) == h.
std::string to_json(const Hyperparameters& h);

}  // namespace lgp
