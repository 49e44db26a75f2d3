#include "lgp/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lgp/variation.hpp"

namespace lgp {

namespace {

// Substream tags, so the init/variation/evaluation draws never overlap.
constexpr std::uint64_t kInitTag = 0x696e6974;
constexpr std::uint64_t kVariationTag = 0x76617279;
constexpr std::uint64_t kEvalTag = 0x6576616c;

constexpr int kTournamentSize = 2;

Individual make_individual(const Hyperparameters& h, Program program) {
  Individual ind{std::move(program), std::nullopt, std::nullopt};
  if (h.q_params) {
    ind.q_table.emplace(make_shape(h).register_count(), h.n_actions,
                        *h.q_params);
  }
  return ind;
}

/// Static-chunked parallel loop; the work split depends only on (n, threads),
/// never on timing, so results are schedule-independent.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t worker_count =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> workers;
  workers.reserve(worker_count);
  for (std::size_t w = 0; w < worker_count; ++w) {
    workers.emplace_back([&, w] {
      const std::size_t begin = n * w / worker_count;
      const std::size_t end = n * (w + 1) / worker_count;
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

void evaluate_population(Population& pop, const Hyperparameters& h,
                         const FitnessEvaluator& evaluator, std::uint64_t seed,
                         int generation, int threads) {
  const bool refresh = evaluator.stochastic();
  parallel_for(pop.size(), threads, [&](std::size_t i) {
    Individual& ind = pop[i];
    if (!refresh && ind.fitness.has_value()) return;
    RngStream rng = RngStream::derive(seed, kEvalTag,
                                      static_cast<std::uint64_t>(generation),
                                      static_cast<std::uint64_t>(i));
    const double score = evaluator.evaluate(ind, rng);
    ind.fitness = std::isfinite(score) ? score : h.default_fitness;
  });
}

}  // namespace

Population initialize_population(const Hyperparameters& h, RngStream& rng) {
  Population pop;
  pop.reserve(static_cast<std::size_t>(h.population_size));
  for (int i = 0; i < h.population_size; ++i) {
    pop.push_back(make_individual(h, generate_program(h, rng)));
  }
  return pop;
}

void rank(Population& pop) {
  for (const Individual& ind : pop) {
    if (!ind.fitness.has_value()) {
      throw std::logic_error("rank() requires every individual evaluated");
    }
  }
  std::stable_sort(pop.begin(), pop.end(),
                   [](const Individual& a, const Individual& b) {
                     return *a.fitness > *b.fitness;
                   });
}

void survive(Population& pop, double gap) {
  const auto dropped = static_cast<std::size_t>(
      std::floor(gap * static_cast<double>(pop.size())));
  pop.erase(pop.end() - static_cast<std::ptrdiff_t>(dropped), pop.end());
}

const Individual& tournament_select(const Population& pop, int k,
                                    RngStream& rng) {
  if (pop.empty()) {
    throw std::invalid_argument("tournament_select on an empty population");
  }
  const Individual* best = nullptr;
  for (int i = 0; i < k; ++i) {
    const Individual& contender =
        pop[static_cast<std::size_t>(rng.uniform_below(
            static_cast<int>(pop.size())))];
    if (best == nullptr || *contender.fitness > *best->fitness) {
      best = &contender;
    }
  }
  return *best;
}

void refill(Population& pop, const Hyperparameters& h, RngStream& rng) {
  const int deficit = h.population_size - static_cast<int>(pop.size());
  if (deficit <= 0) return;
  int n_crossover = std::min(
      static_cast<int>(std::lround(h.crossover_percent * deficit)), deficit);
  int n_mutation = std::min(
      static_cast<int>(std::lround(h.mutation_percent * deficit)),
      deficit - n_crossover);
  const int n_clone = deficit - n_crossover - n_mutation;
  assert(n_clone >= 0);

  // Selection draws only from the survivor block; offspring appended behind
  // it are not eligible as parents this generation. reserve() keeps the
  // references handed out by select() valid across the push_backs below.
  const int survivor_count = static_cast<int>(pop.size());
  auto select = [&]() -> const Individual& {
    const Individual* best = nullptr;
    for (int i = 0; i < kTournamentSize; ++i) {
      const Individual& contender =
          pop[static_cast<std::size_t>(rng.uniform_below(survivor_count))];
      if (best == nullptr || *contender.fitness > *best->fitness) {
        best = &contender;
      }
    }
    return *best;
  };

  pop.reserve(static_cast<std::size_t>(h.population_size));
  for (int i = 0; i < n_crossover; ++i) {
    const Program& a = select().program;
    const Program& b = select().program;
    pop.push_back(make_individual(h, crossover(a, b, rng)));
  }
  for (int i = 0; i < n_mutation; ++i) {
    pop.push_back(make_individual(h, mutate(select().program, h, rng)));
  }
  for (int i = 0; i < n_clone; ++i) {
    pop.push_back(make_individual(h, select().program));
  }
}

GenerationStats summarize(const Population& pop, int generation) {
  GenerationStats stats;
  stats.generation = generation;
  if (pop.empty()) return stats;
  double sum = 0.0;
  double max = *pop.front().fitness;
  double min = max;
  for (const Individual& ind : pop) {
    const double f = *ind.fitness;
    sum += f;
    max = std::max(max, f);
    min = std::min(min, f);
  }
  std::vector<double> sorted;
  sorted.reserve(pop.size());
  for (const Individual& ind : pop) sorted.push_back(*ind.fitness);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 == 1
                            ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  stats.max = max;
  stats.mean = sum / static_cast<double>(n);
  stats.median = median;
  stats.min = min;
  return stats;
}

EvolveResult evolve(const Hyperparameters& h, const FitnessEvaluator& evaluator,
                    std::uint64_t seed, int threads) {
  RngStream init_rng = RngStream::derive(seed, kInitTag);
  RngStream variation_rng = RngStream::derive(seed, kVariationTag);

  EvolveResult result;
  result.population = initialize_population(h, init_rng);
  evaluate_population(result.population, h, evaluator, seed, 0, threads);
  rank(result.population);

  result.stats.reserve(static_cast<std::size_t>(h.n_generations));
  if (h.n_generations > 0) {
    result.stats.push_back(summarize(result.population, 0));
  }
  for (int generation = 1; generation < h.n_generations; ++generation) {
    survive(result.population, h.gap);
    refill(result.population, h, variation_rng);
    evaluate_population(result.population, h, evaluator, seed, generation,
                        threads);
    rank(result.population);
    result.stats.push_back(summarize(result.population, generation));
  }
  return result;
}

}  // namespace lgp
