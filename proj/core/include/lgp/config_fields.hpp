#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "lgp/config.hpp"

namespace lgp {

/// Metadata for one numeric configuration field: its admissible range and
/// accessors. Backs validate(), the random-search space checks and the tuner's
/// by-name field sampling.
struct FieldSpec {
  const char* name;
  bool integral;
  double min;
  double max;  // +inf when unbounded above
  bool min_exclusive;
  bool max_exclusive;
  bool tunable;  // eligible for random-search sampling

  bool contains(double value) const;
  /// Range rendered like "(0, 1)" or "[1, inf)".
  std::string range_text() const;
};

/// Every numeric field (seed excluded; it is not range-tunable).
std::span<const FieldSpec> field_specs();

const FieldSpec* find_field(std::string_view name);

/// Reads a field by name. Q-learning fields read from q_params when present,
/// otherwise from the QParams defaults.
double get_field(const Hyperparameters& h, std::string_view name);

/// Writes a field by name; integral fields take the rounded value. Setting a
/// q-learning field materializes q_params if absent.
void set_field(Hyperparameters& h, std::string_view name, double value);

}  // namespace lgp
