#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lgp/config.hpp"
#include "lgp/experiment.hpp"
#include "lgp/plot.hpp"
#include "lgp/random.hpp"
#include "lgp/task.hpp"

namespace {

namespace fs = std::filesystem;

/// CLI --seed wins over the config's seed; a fresh entropy seed otherwise.
std::uint64_t pick_seed(const std::optional<std::uint64_t>& cli_seed,
                        const lgp::Hyperparameters& h) {
  if (cli_seed.has_value()) return *cli_seed;
  if (h.seed.has_value()) return *h.seed;
  return lgp::entropy_seed();
}

void write_text_file(const std::string& text, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

struct RunArgs {
  std::string config;
  std::optional<std::string> q_config;
  std::string task;
  int experiments = 1;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string iris_data = "assets/iris.csv";
  int threads = 1;
};

int run_command(const RunArgs& args) {
  const lgp::Task task = lgp::parse_task(args.task);
  std::optional<fs::path> overlay;
  if (args.q_config.has_value()) overlay = fs::path(*args.q_config);
  const lgp::Hyperparameters h =
      lgp::load_config(args.config, task, overlay);
  const std::uint64_t seed = pick_seed(args.seed, h);

  const auto evaluator = lgp::make_evaluator(h, task, args.iris_data);
  lgp::BatchOptions options;
  options.n_experiments = args.experiments;
  options.base_seed = seed;
  options.threads = args.threads;
  const lgp::ExperimentBatchResult result =
      lgp::run_batch(h, task, *evaluator, options);

  const fs::path out_dir(args.out_dir);
  fs::create_directories(out_dir);
  lgp::write_stats_csv(result.aggregate, out_dir / "aggregate.csv");
  if (result.aggregate.empty()) {
    std::cout << "no generations recorded, skipping plot.svg\n";
  } else {
    lgp::write_stats_svg(result.aggregate, out_dir / "plot.svg");
  }
  write_text_file(result.best_program.to_text(),
                  out_dir / "best_program.txt");
  write_text_file(lgp::batch_meta_json(result), out_dir / "run_meta.json");

  std::cout << "task " << lgp::task_name(task) << ", " << args.experiments
            << " experiment(s), base seed " << seed << "\n";
  std::cout << "best fitness " << result.best_fitness << "\n";
  std::cout << "outputs in " << out_dir.string() << "\n";
  return 0;
}

struct TuneArgs {
  std::string space;
  std::string task;
  int budget = 1;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string iris_data = "assets/iris.csv";
  int threads = 1;
};

int tune_command(const TuneArgs& args) {
  const lgp::Task task = lgp::parse_task(args.task);
  const lgp::SearchSpace space = lgp::load_space(args.space, task);
  const std::uint64_t seed =
      args.seed.has_value() ? *args.seed : lgp::entropy_seed();

  const std::string iris_data = args.iris_data;
  lgp::EvaluatorFactory factory = [task, iris_data](
                                      const lgp::Hyperparameters& h) {
    return lgp::make_evaluator(h, task, iris_data);
  };
  const lgp::TuneResult result =
      lgp::random_search(space, factory, args.budget, seed, args.threads);

  const fs::path out_dir(args.out_dir);
  fs::create_directories(out_dir);
  write_text_file(lgp::trials_to_csv(result, space), out_dir / "trials.csv");
  write_text_file(lgp::to_json(result.best), out_dir / "best_config.json");

  std::cout << "task " << lgp::task_name(task) << ", " << args.budget
            << " trial(s), seed " << seed << "\n";
  std::cout << "best objective " << result.best_objective << "\n";
  std::cout << "outputs in " << out_dir.string() << "\n";
  return 0;
}

int plot_command(const std::string& input, const std::string& out) {
  const auto rows = lgp::parse_stats_csv(input);
  lgp::write_stats_svg(rows, out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int validate_command(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open: " << config_path << "\n";
    return 1;
  }
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  lgp::Hyperparameters h;
  try {
    h = lgp::parse_config(text);
  } catch (const lgp::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const lgp::ValidationReport report = lgp::validate(h);
  if (!report.ok()) {
    for (const auto& violation : report.violations) {
      std::cerr << violation.field << ": " << violation.message << "\n";
    }
    return 1;
  }
  std::cout << "ok\n";
  return 0;
}

struct ShowBestArgs {
  std::string config;
  std::string task;
  std::optional<std::uint64_t> seed;
  std::string iris_data = "assets/iris.csv";
  int threads = 1;
};

int show_best_command(const ShowBestArgs& args) {
  const lgp::Task task = lgp::parse_task(args.task);
  const lgp::Hyperparameters h = lgp::load_config(args.config, task);
  const std::uint64_t seed = pick_seed(args.seed, h);
  const auto evaluator = lgp::make_evaluator(h, task, args.iris_data);
  const lgp::EvolveResult result =
      lgp::evolve(h, *evaluator, seed, args.threads);
  if (result.population.empty()) {
    std::cerr << "error: empty population\n";
    return 1;
  }
  std::cout << result.population.front().program.to_text();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear genetic programming: evolve register-machine programs "
               "for classification and control tasks"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "run a seeded experiment batch");
  run->add_option("--config", run_args.config, "config JSON file")
      ->required();
  run->add_option("--q-config", run_args.q_config,
                  "overlay JSON with Q-learning fields");
  run->add_option("--task", run_args.task, "iris, cart-pole or mountain-car")
      ->required();
  run->add_option("--experiments", run_args.experiments,
                  "independent runs to aggregate")
      ->check(CLI::PositiveNumber)
      ->required();
  run->add_option("--seed", run_args.seed,
                  "base seed (default: config seed, else entropy)");
  run->add_option("--out-dir", run_args.out_dir, "output directory")
      ->required();
  run->add_option("--iris-data", run_args.iris_data,
                  "labeled dataset CSV for the iris task");
  run->add_option("--threads", run_args.threads,
                  "evaluation worker threads per run")
      ->check(CLI::PositiveNumber);

  TuneArgs tune_args;
  CLI::App* tune =
      app.add_subcommand("tune", "random-search a hyperparameter space");
  tune->add_option("--space", tune_args.space, "search-space JSON file")
      ->required();
  tune->add_option("--task", tune_args.task, "iris, cart-pole or mountain-car")
      ->required();
  tune->add_option("--budget", tune_args.budget, "configs to sample")
      ->check(CLI::PositiveNumber)
      ->required();
  tune->add_option("--seed", tune_args.seed,
                   "search seed (default: entropy)");
  tune->add_option("--out-dir", tune_args.out_dir, "output directory")
      ->required();
  tune->add_option("--iris-data", tune_args.iris_data,
                   "labeled dataset CSV for the iris task");
  tune->add_option("--threads", tune_args.threads,
                   "evaluation worker threads per run")
      ->check(CLI::PositiveNumber);

  std::string plot_input;
  std::string plot_out;
  CLI::App* plot =
      app.add_subcommand("plot", "render an aggregate CSV as an SVG chart");
  plot->add_option("--input", plot_input, "aggregate CSV file")->required();
  plot->add_option("--out", plot_out, "SVG output path")->required();

  std::string validate_config_path;
  CLI::App* validate = app.add_subcommand(
      "validate-config", "check a config file against the admissible ranges");
  validate->add_option("--config", validate_config_path, "config JSON file")
      ->required();

  ShowBestArgs show_args;
  CLI::App* show_best = app.add_subcommand(
      "show-best", "evolve once and print the best program");
  show_best->add_option("--config", show_args.config, "config JSON file")
      ->required();
  show_best
      ->add_option("--task", show_args.task, "iris, cart-pole or mountain-car")
      ->required();
  show_best->add_option("--seed", show_args.seed,
                        "seed (default: config seed, else entropy)");
  show_best->add_option("--iris-data", show_args.iris_data,
                        "labeled dataset CSV for the iris task");
  show_best
      ->add_option("--threads", show_args.threads,
                   "evaluation worker threads")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(run_args);
    if (tune->parsed()) return tune_command(tune_args);
    if (plot->parsed()) return plot_command(plot_input, plot_out);
    if (validate->parsed()) return validate_command(validate_config_path);
    if (show_best->parsed()) return show_best_command(show_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
