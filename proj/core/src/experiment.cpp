#include "lgp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "lgp/config_fields.hpp"
#include "lgp/environments.hpp"

namespace lgp {

namespace {

using ordered_json = nlohmann::ordered_json;

// Substream tag separating trial sampling from everything else.
constexpr std::uint64_t kSampleTag = 0x73616d70;

constexpr int kObjectiveSeeds = 3;

// A sampled config can violate the cross-field share rule even when every
// range is individually admissible; redraw a bounded number of times.
constexpr int kMaxSampleAttempts = 1000;

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

std::string format_row(const GenerationStats& row) {
  char line[192];
  std::snprintf(line, sizeof(line), "%d,%.6f,%.6f,%.6f,%.6f\n",
                row.generation, row.max, row.mean, row.median, row.min);
  return line;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

Hyperparameters sample_config(const SearchSpace& space, RngStream& rng) {
  for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
    Hyperparameters candidate = space.base;
    for (const ParameterRange& range : space.ranges) {
      const FieldSpec* spec = find_field(range.field);
      double value;
      if (spec->integral) {
        value = rng.uniform_range(static_cast<int>(std::llround(range.lo)),
                                  static_cast<int>(std::llround(range.hi)));
      } else {
        value = range.lo + rng.uniform() * (range.hi - range.lo);
      }
      set_field(candidate, range.field, value);
    }
    if (validate(candidate).ok()) return candidate;
  }
  throw ConfigError(
      "random_search: no valid configuration found in the search space");
}

double final_best_fitness(const EvolveResult& run) {
  if (!run.stats.empty()) return run.stats.back().max;
  return *run.population.front().fitness;
}

/// Sampled field names, sorted and deduplicated: the trial log column set.
std::vector<std::string> sampled_fields(const SearchSpace& space) {
  std::vector<std::string> names;
  names.reserve(space.ranges.size());
  for (const ParameterRange& range : space.ranges) names.push_back(range.field);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

}  // namespace

std::vector<GenerationStats> aggregate_stats(
    const std::vector<std::vector<GenerationStats>>& runs) {
  if (runs.empty()) {
    throw std::invalid_argument("aggregate_stats: no runs");
  }
  const std::size_t length = runs.front().size();
  for (const auto& run : runs) {
    if (run.size() != length) {
      throw std::invalid_argument("aggregate_stats: ragged run lengths");
    }
  }
  std::vector<GenerationStats> aggregate;
  aggregate.reserve(length);
  const double count = static_cast<double>(runs.size());
  for (std::size_t g = 0; g < length; ++g) {
    GenerationStats row;
    row.generation = runs.front()[g].generation;
    for (const auto& run : runs) {
      row.max += run[g].max;
      row.mean += run[g].mean;
      row.median += run[g].median;
      row.min += run[g].min;
    }
    row.max /= count;
    row.mean /= count;
    row.median /= count;
    row.min /= count;
    aggregate.push_back(row);
  }
  return aggregate;
}

ExperimentBatchResult run_batch(const Hyperparameters& h, Task task,
                                const FitnessEvaluator& evaluator,
                                const BatchOptions& options) {
  if (options.n_experiments < 1) {
    throw std::invalid_argument("run_batch: n_experiments must be positive");
  }
  std::vector<std::uint64_t> seeds;
  std::vector<std::vector<GenerationStats>> runs;
  std::optional<Program> best_program;
  double best_fitness = 0.0;
  for (int i = 0; i < options.n_experiments; ++i) {
    const std::uint64_t seed =
        options.base_seed + static_cast<std::uint64_t>(i);
    seeds.push_back(seed);
    EvolveResult run;
    try {
      run = evolve(h, evaluator, seed, options.threads);
    } catch (const std::exception& e) {
      throw std::runtime_error("experiment with seed " + std::to_string(seed) +
                               " failed: " + e.what());
    }
    runs.push_back(std::move(run.stats));
    if (!run.population.empty()) {
      const Individual& front = run.population.front();
      if (!best_program.has_value() || *front.fitness > best_fitness) {
        best_program = front.program;
        best_fitness = *front.fitness;
      }
    }
  }
  if (!best_program.has_value()) {
    throw std::runtime_error("run_batch: empty populations, no best program");
  }
  return ExperimentBatchResult{task,
                               h,
                               std::move(seeds),
                               aggregate_stats(runs),
                               std::move(*best_program),
                               best_fitness};
}

std::unique_ptr<FitnessEvaluator> make_evaluator(
    const Hyperparameters& h, Task task,
    const std::filesystem::path& iris_csv) {
  switch (task) {
    case Task::kIris:
      return std::make_unique<IrisEvaluator>(load_iris(iris_csv), h);
    case Task::kCartPole: {
      EnvFactory factory = [] { return std::make_unique<CartPole>(); };
      if (h.q_params.has_value()) {
        return std::make_unique<QLearningEvaluator>(std::move(factory), h);
      }
      return std::make_unique<EpisodeEvaluator>(std::move(factory), h);
    }
    case Task::kMountainCar: {
      EnvFactory factory = [] { return std::make_unique<MountainCar>(); };
      if (h.q_params.has_value()) {
        return std::make_unique<QLearningEvaluator>(std::move(factory), h);
      }
      return std::make_unique<EpisodeEvaluator>(std::move(factory), h);
    }
  }
  throw std::logic_error("make_evaluator: unknown task");
}

std::string stats_to_csv(const std::vector<GenerationStats>& rows) {
  std::string out = "generation,max,mean,median,min\n";
  for (const GenerationStats& row : rows) out += format_row(row);
  return out;
}

void write_stats_csv(const std::vector<GenerationStats>& rows,
                     const std::filesystem::path& path) {
  write_text(stats_to_csv(rows), path);
}

std::vector<GenerationStats> parse_stats_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty statistics file: " + path.string());
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "generation,max,mean,median,min") {
    throw std::runtime_error("unexpected header in " + path.string() + ": " +
                             line);
  }
  std::vector<GenerationStats> rows;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw std::runtime_error(path.string() + " line " +
                               std::to_string(line_number) +
                               ": expected 5 fields");
    }
    try {
      GenerationStats row;
      row.generation = std::stoi(fields[0]);
      row.max = std::stod(fields[1]);
      row.mean = std::stod(fields[2]);
      row.median = std::stod(fields[3]);
      row.min = std::stod(fields[4]);
      rows.push_back(row);
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + " line " +
                               std::to_string(line_number) +
                               ": malformed number");
    }
  }
  return rows;
}

std::string config_digest(const Hyperparameters& h) {
  const std::string text = to_json(h);
  std::uint64_t hash = 1469598103934665603ULL;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char digest[17];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(hash));
  return digest;
}

std::string batch_meta_json(const ExperimentBatchResult& result) {
  ordered_json meta;
  meta["task"] = task_name(result.task);
  meta["config"] = ordered_json::parse(to_json(result.config));
  meta["config_digest"] = config_digest(result.config);
  meta["experiments"] = result.seeds.size();
  meta["seeds"] = result.seeds;
  meta["best_fitness"] = result.best_fitness;
  return meta.dump(2) + "\n";
}

SearchSpace parse_space(const std::string& json_text,
                        std::optional<Task> task) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError(std::string("search space is not valid JSON: ") +
                      e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("search space must be a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "base" && key != "ranges") {
      throw ConfigError("unknown search-space key: " + key);
    }
  }

  SearchSpace space;
  if (doc.contains("base")) {
    if (!doc["base"].is_object()) {
      throw ConfigError("search-space base must be an object");
    }
    space.base = parse_config(doc["base"].dump(), task);
  } else {
    space.base = parse_config("{}", task);
  }
  const ValidationReport report = validate(space.base);
  if (!report.ok()) {
    std::string message = "search-space base is invalid:";
    for (const ConfigViolation& violation : report.violations) {
      message += "\n  " + violation.field + ": " + violation.message;
    }
    throw ConfigError(message);
  }

  if (!doc.contains("ranges")) {
    throw ConfigError("search space needs a ranges object");
  }
  if (!doc["ranges"].is_object()) {
    throw ConfigError("search-space ranges must be an object");
  }
  for (const auto& [name, bounds] : doc["ranges"].items()) {
    const FieldSpec* spec = find_field(name);
    if (spec == nullptr) {
      throw ConfigError("unknown field in ranges: " + name);
    }
    if (!spec->tunable) {
      throw ConfigError("field is not tunable: " + name);
    }
    for (const ParameterRange& existing : space.ranges) {
      if (existing.field == name) {
        throw ConfigError("duplicate range for field: " + name);
      }
    }
    if (!bounds.is_array() || bounds.size() != 2 ||
        !bounds[0].is_number() || !bounds[1].is_number()) {
      throw ConfigError("range for " + name +
                        " must be a [lo, hi] number pair");
    }
    if (spec->integral &&
        (!bounds[0].is_number_integer() || !bounds[1].is_number_integer())) {
      throw ConfigError("range for " + name + " must have integer endpoints");
    }
    ParameterRange range;
    range.field = name;
    range.lo = bounds[0].get<double>();
    range.hi = bounds[1].get<double>();
    if (range.lo > range.hi) {
      throw ConfigError("range for " + name + " has lo > hi");
    }
    if (!spec->contains(range.lo) || !spec->contains(range.hi)) {
      throw ConfigError("range for " + name + " leaves the admissible range " +
                        spec->range_text());
    }
    space.ranges.push_back(std::move(range));
  }
  return space;
}

SearchSpace load_space(const std::filesystem::path& path,
                       std::optional<Task> task) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open search space: " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_space(text.str(), task);
}

TuneResult random_search(const SearchSpace& space,
                         const EvaluatorFactory& make_eval, int budget,
                         std::uint64_t seed, int threads) {
  if (budget < 1) {
    throw std::invalid_argument("random_search: budget must be positive");
  }
  std::vector<TuneTrial> trials;
  trials.reserve(static_cast<std::size_t>(budget));
  int best_index = -1;
  for (int t = 0; t < budget; ++t) {
    RngStream rng =
        RngStream::derive(seed, kSampleTag, static_cast<std::uint64_t>(t));
    Hyperparameters candidate = sample_config(space, rng);
    const std::unique_ptr<FitnessEvaluator> evaluator = make_eval(candidate);
    double objective = 0.0;
    for (int k = 0; k < kObjectiveSeeds; ++k) {
      const EvolveResult run =
          evolve(candidate, *evaluator,
                 mix_seed(seed, static_cast<std::uint64_t>(t),
                          static_cast<std::uint64_t>(k)),
                 threads);
      objective += final_best_fitness(run);
    }
    objective /= kObjectiveSeeds;
    trials.push_back(TuneTrial{t, objective, std::move(candidate)});
    if (best_index < 0 || objective > trials[best_index].objective) {
      best_index = t;
    }
  }
  TuneResult result;
  result.best = trials[best_index].config;
  result.best_objective = trials[best_index].objective;
  result.trials = std::move(trials);
  return result;
}

std::string trials_to_csv(const TuneResult& result,
                          const SearchSpace& space) {
  const std::vector<std::string> fields = sampled_fields(space);
  std::string out = "trial,objective";
  for (const std::string& name : fields) out += "," + name;
  out += "\n";
  char buffer[64];
  for (const TuneTrial& trial : result.trials) {
    out += std::to_string(trial.index);
    std::snprintf(buffer, sizeof(buffer), ",%.6f", trial.objective);
    out += buffer;
    for (const std::string& name : fields) {
      const FieldSpec* spec = find_field(name);
      const double value = get_field(trial.config, name);
      if (spec->integral) {
        std::snprintf(buffer, sizeof(buffer), ",%lld",
                      static_cast<long long>(std::llround(value)));
      } else {
        std::snprintf(buffer, sizeof(buffer), ",%.6f", value);
      }
      out += buffer;
    }
    out += "\n";
  }
  return out;
}

}  // namespace lgp
