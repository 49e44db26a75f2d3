#include "lgp/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "lgp/config_fields.hpp"

namespace lgp {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr bool kQField = true;

struct FieldEntry {
  FieldSpec spec;
  bool q_field = false;
  double (*get)(const Hyperparameters&);
  void (*set)(Hyperparameters&, double);
};

QParams& ensure_q(Hyperparameters& h) {
  if (!h.q_params) h.q_params = QParams{};
  return *h.q_params;
}

// clang-format off
const FieldEntry kFields[] = {
    {{"default_fitness", false, -kInf, kInf, false, false, true}, false,
     [](const Hyperparameters& h) { return h.default_fitness; },
     [](Hyperparameters& h, double v) { h.default_fitness = v; }},
    {{"population_size", true, 0, kInf, false, false, true}, false,
     [](const Hyperparameters& h) { return double(h.population_size); },
     [](Hyperparameters& h, double v) { h.population_size = int(std::lround(v)); }},
    {{"gap", false, 0, 1, true, true, true}, false,
     [](const Hyperparameters& h) { return h.gap; },
     [](Hyperparameters& h, double v) { h.gap = v; }},
    {{"mutation_percent", false, 0, 1, false, false, true}, false,
     [](const Hyperparameters& h) { return h.mutation_percent; },
     [](Hyperparameters& h, double v) { h.mutation_percent = v; }},
    {{"crossover_percent", false, 0, 1, false, false, true}, false,
     [](const Hyperparameters& h) { return h.crossover_percent; },
     [](Hyperparameters& h, double v) { h.crossover_percent = v; }},
    {{"n_generations", true, 0, kInf, false, false, true}, false,
     [](const Hyperparameters& h) { return double(h.n_generations); },
     [](Hyperparameters& h, double v) { h.n_generations = int(std::lround(v)); }},
    {{"n_trials", true, 1, kInf, false, false, true}, false,
     [](const Hyperparameters& h) { return double(h.n_trials); },
     [](Hyperparameters& h, double v) { h.n_trials = int(std::lround(v)); }},
    {{"max_instructions", true, 1, kInf, false, false, true}, false,
     [](const Hyperparameters& h) { return double(h.max_instructions); },
     [](Hyperparameters& h, double v) { h.max_instructions = int(std::lround(v)); }},
    {{"n_extras", true, 1, kInf, false, false, true}, false,
     [](const Hyperparameters& h) { return double(h.n_extras); },
     [](Hyperparameters& h, double v) { h.n_extras = int(std::lround(v)); }},
    {{"external_factor", false, 0, kInf, false, false, true}, false,
     [](const Hyperparameters& h) { return h.external_factor; },
     [](Hyperparameters& h, double v) { h.external_factor = v; }},
    // Task-determined widths: not tunable.
    {{"n_actions", true, 1, kInf, false, false, false}, false,
     [](const Hyperparameters& h) { return double(h.n_actions); },
     [](Hyperparameters& h, double v) { h.n_actions = int(std::lround(v)); }},
    {{"n_inputs", true, 1, kInf, false, false, false}, false,
     [](const Hyperparameters& h) { return double(h.n_inputs); },
     [](Hyperparameters& h, double v) { h.n_inputs = int(std::lround(v)); }},
    {{"alpha", false, 0, 1, false, false, true}, kQField,
     [](const Hyperparameters& h) { return h.q_params.value_or(QParams{}).alpha; },
     [](Hyperparameters& h, double v) { ensure_q(h).alpha = v; }},
    {{"gamma", false, 0, 1, false, false, true}, kQField,
     [](const Hyperparameters& h) { return h.q_params.value_or(QParams{}).gamma; },
     [](Hyperparameters& h, double v) { ensure_q(h).gamma = v; }},
    {{"epsilon", false, 0, 1, false, false, true}, kQField,
     [](const Hyperparameters& h) { return h.q_params.value_or(QParams{}).epsilon; },
     [](Hyperparameters& h, double v) { ensure_q(h).epsilon = v; }},
    {{"alpha_decay", false, 0, 1, false, false, true}, kQField,
     [](const Hyperparameters& h) { return h.q_params.value_or(QParams{}).alpha_decay; },
     [](Hyperparameters& h, double v) { ensure_q(h).alpha_decay = v; }},
    {{"epsilon_decay", false, 0, 1, false, false, true}, kQField,
     [](const Hyperparameters& h) { return h.q_params.value_or(QParams{}).epsilon_decay; },
     [](Hyperparameters& h, double v) { ensure_q(h).epsilon_decay = v; }},
};
// clang-format on

const FieldEntry* find_entry(std::string_view name) {
  for (const auto& f : kFields) {
    if (name == f.spec.name) return &f;
  }
  return nullptr;
}

std::string number_text(double v, bool integral) {
  std::ostringstream os;
  if (integral && std::isfinite(v)) {
    os << static_cast<long long>(v);
  } else {
    os << v;
  }
  return os.str();
}

void apply_value(Hyperparameters& h, const FieldEntry& entry,
                 const ordered_json& value, const std::string& where) {
  if (entry.spec.integral) {
    if (!value.is_number_integer()) {
      throw ConfigError(where + entry.spec.name + ": expected an integer, got " +
                        value.dump());
    }
    entry.set(h, value.get<double>());
  } else {
    if (!value.is_number()) {
      throw ConfigError(where + entry.spec.name + ": expected a number, got " +
                        value.dump());
    }
    entry.set(h, value.get<double>());
  }
}

void apply_seed(Hyperparameters& h, const ordered_json& value,
                const std::string& where) {
  if (value.is_null()) {
    h.seed.reset();
    return;
  }
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw ConfigError(where + "seed: expected a non-negative integer or null, got " +
                      value.dump());
  }
  h.seed = value.get<std::uint64_t>();
}

// Applies one parsed JSON document onto a record. Shared by parse and overlay.
void apply_document(Hyperparameters& h, const ordered_json& doc,
                    const std::string& where) {
  if (!doc.is_object()) {
    throw ConfigError(where + "top-level JSON value must be an object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "seed") {
      apply_seed(h, value, where);
    } else if (key == "q_params") {
      if (!value.is_object()) {
        throw ConfigError(where + "q_params: expected an object, got " +
                          value.dump());
      }
      for (const auto& [qkey, qvalue] : value.items()) {
        const FieldEntry* entry = find_entry(qkey);
        if (entry == nullptr || !entry->q_field) {
          throw ConfigError(where + "unknown field 'q_params." + qkey + "'");
        }
        apply_value(h, *entry, qvalue, where);
      }
    } else if (const FieldEntry* entry = find_entry(key)) {
      apply_value(h, *entry, value, where);
    } else {
      throw ConfigError(where + "unknown field '" + key + "'");
    }
  }
}

ordered_json parse_document(const std::string& text, const std::string& where) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(where + "malformed JSON: " + e.what());
  }
}

void check_task_dimensions(const Hyperparameters& h, Task task) {
  const TaskInfo& info = task_info(task);
  if (h.n_inputs != info.n_inputs) {
    throw ConfigError(std::string("n_inputs must equal ") +
                      std::to_string(info.n_inputs) + " for task " + info.name +
                      " (got " + std::to_string(h.n_inputs) + ")");
  }
  if (h.n_actions != info.n_actions) {
    throw ConfigError(std::string("n_actions must equal ") +
                      std::to_string(info.n_actions) + " for task " +
                      info.name + " (got " + std::to_string(h.n_actions) + ")");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

bool FieldSpec::contains(double value) const {
  if (min_exclusive ? value <= min : value < min) return false;
  if (max_exclusive ? value >= max : value > max) return false;
  return true;
}

std::string FieldSpec::range_text() const {
  std::string out;
  out += min_exclusive ? '(' : '[';
  out += number_text(min, integral);
  out += ", ";
  out += max == kInf ? "inf" : number_text(max, integral);
  out += (max_exclusive || max == kInf) ? ')' : ']';
  return out;
}

std::span<const FieldSpec> field_specs() {
  static const std::vector<FieldSpec> specs = [] {
    std::vector<FieldSpec> v;
    for (const auto& f : kFields) v.push_back(f.spec);
    return v;
  }();
  return specs;
}

const FieldSpec* find_field(std::string_view name) {
  const FieldEntry* entry = find_entry(name);
  return entry ? &entry->spec : nullptr;
}

double get_field(const Hyperparameters& h, std::string_view name) {
  const FieldEntry* entry = find_entry(name);
  if (!entry) throw ConfigError("unknown field '" + std::string(name) + "'");
  return entry->get(h);
}

void set_field(Hyperparameters& h, std::string_view name, double value) {
  const FieldEntry* entry = find_entry(name);
  if (!entry) throw ConfigError("unknown field '" + std::string(name) + "'");
  entry->set(h, value);
}

ValidationReport validate(const Hyperparameters& h) {
  ValidationReport report;
  for (const auto& entry : kFields) {
    if (entry.q_field && !h.q_params) continue;
    const double value = entry.get(h);
    if (!entry.spec.contains(value)) {
      report.violations.push_back(
          {entry.spec.name,
           std::string(entry.spec.name) + " must be in " +
               entry.spec.range_text() + " (got " +
               number_text(value, entry.spec.integral) + ")"});
    }
  }
  if (h.mutation_percent + h.crossover_percent > 1.0) {
    std::ostringstream msg;
    msg << "mutation_percent + crossover_percent must not exceed 1 (got "
        << h.mutation_percent << " + " << h.crossover_percent << ")";
    report.violations.push_back({"mutation_percent", msg.str()});
  }
  return report;
}

Hyperparameters parse_config(const std::string& json_text,
                             std::optional<Task> task) {
  Hyperparameters h;
  if (task) {
    const TaskInfo& info = task_info(*task);
    h.n_inputs = info.n_inputs;
    h.n_actions = info.n_actions;
  }
  apply_document(h, parse_document(json_text, ""), "");
  if (task) check_task_dimensions(h, *task);
  return h;
}

Hyperparameters merge_overlay(const Hyperparameters& base,
                              const std::string& overlay_json_text) {
  Hyperparameters h = base;
  apply_document(h, parse_document(overlay_json_text, "overlay: "),
                 "overlay: ");
  return h;
}

Hyperparameters load_config(const std::filesystem::path& path,
                            std::optional<Task> task,
                            const std::optional<std::filesystem::path>& overlay) {
  Hyperparameters h = parse_config(read_file(path), task);
  if (overlay) {
    h = merge_overlay(h, read_file(*overlay));
    if (task) check_task_dimensions(h, *task);
  }
  const ValidationReport report = validate(h);
  if (!report.ok()) {
    std::string msg = path.string() + ": invalid configuration";
    for (const auto& v : report.violations) msg += "\n  " + v.message;
    throw ConfigError(msg);
  }
  return h;
}

std::string to_json(const Hyperparameters& h) {
  ordered_json j;
  j["default_fitness"] = h.default_fitness;
  j["population_size"] = h.population_size;
  j["gap"] = h.gap;
  j["mutation_percent"] = h.mutation_percent;
  j["crossover_percent"] = h.crossover_percent;
  j["n_generations"] = h.n_generations;
  j["n_trials"] = h.n_trials;
  if (h.seed) j["seed"] = *h.seed;
  j["max_instructions"] = h.max_instructions;
  j["n_extras"] = h.n_extras;
  j["external_factor"] = h.external_factor;
  j["n_actions"] = h.n_actions;
  j["n_inputs"] = h.n_inputs;
  if (h.q_params) {
    ordered_json q;
    q["alpha"] = h.q_params->alpha;
    q["gamma"] = h.q_params->gamma;
    q["epsilon"] = h.q_params->epsilon;
    q["alpha_decay"] = h.q_params->alpha_decay;
    q["epsilon_decay"] = h.q_params->epsilon_decay;
    j["q_params"] = q;
  }
  return j.dump(2) + "\n";
}

}  // namespace lgp
