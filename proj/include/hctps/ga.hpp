#pragma once

// Canonical binary-encoded genetic algorithm: tournament selection, two-point
// crossover, bit-flip mutation and elitist generational replacement, terminated
// by a hard evaluation budget.
//
// Random stream order for one run (all draws from a single Rng seeded with
// GAConfig::seed):
//   1. initial population, individual by individual, one Rng::bit() per gene;
//   2. per generation, per offspring pair:
//        tournament for parent A (tournament_size index draws),
//        tournament for parent B,
//        crossover coin (one uniform01), and if taken two cut draws,
//        mutation of child 1 then child 2 (one uniform01 per gene when
//        0 < p_m < 1, no draws when p_m is 0 or 1).
// Only ceil((N - elite_count) / 2) pairs are bred per generation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hctps/benchmarks.hpp"
#include "hctps/box.hpp"
#include "hctps/error.hpp"
#include "hctps/rng.hpp"

namespace hctps {

using Bits = std::vector<std::uint8_t>;

struct GAConfig {
  std::size_t population_size = 50;
  std::size_t bits_per_dim = 16;
  double crossover_prob = 0.9;
  /// Unset means 1 / (dim * bits_per_dim).
  std::optional<double> mutation_prob;
  std::size_t tournament_size = 2;
  std::size_t elite_count = 1;
  std::uint64_t seed = 0;

  [[nodiscard]] double mutation_prob_for(std::size_t dim) const {
    if (mutation_prob) return *mutation_prob;
    return 1.0 / static_cast<double>(dim * bits_per_dim);
  }

  void validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
    if (population_size < 2 || population_size % 2 != 0) fail("population_size must be even and >= 2");
    if (elite_count >= population_size) fail("elite_count must be smaller than population_size");
    if (bits_per_dim < 1 || bits_per_dim > 52) fail("bits_per_dim must be in [1, 52]");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) fail("crossover_prob must be in [0, 1]");
    if (mutation_prob && !(*mutation_prob >= 0.0 && *mutation_prob <= 1.0)) {
      fail("mutation_prob must be in [0, 1]");
    }
    if (tournament_size < 2) fail("tournament_size must be >= 2");
  }

  friend bool operator==(const GAConfig&, const GAConfig&) = default;
};

struct Chromosome {
  Bits bits;
  std::optional<double> fitness;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

struct RunResult {
  double best_value = 0.0;
  Point best_point;
  std::uint64_t evaluations_used = 0;
  /// Best-so-far value after each generation, starting with the initial one.
  std::vector<double> generation_best_history;
  std::uint64_t seed = 0;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Maps each dimension's bit slice (most significant bit first) affinely onto
/// [lo_i, hi_i]: all zeros give lo_i, all ones give hi_i.
inline Point decode(std::span<const std::uint8_t> bits, const Box& box, std::size_t bits_per_dim) {
  if (bits_per_dim < 1 || bits_per_dim > 52) {
    throw Error(ErrorKind::InvalidConfig, "bits_per_dim must be in [1, 52]");
  }
  if (bits.size() != box.dim() * bits_per_dim) {
    throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(box.dim() * bits_per_dim) +
                                               " bits, got " + std::to_string(bits.size()));
  }
  const double denom = static_cast<double>((std::uint64_t{1} << bits_per_dim) - 1);
  Point x(box.dim());
  for (std::size_t d = 0; d < box.dim(); ++d) {
    std::uint64_t u = 0;
    for (std::size_t b = 0; b < bits_per_dim; ++b) u = (u << 1U) | (bits[d * bits_per_dim + b] & 1U);
    const double lo = box.lo(d);
    const double hi = box.hi(d);
    x[d] = std::clamp(lo + (static_cast<double>(u) / denom) * (hi - lo), lo, hi);
  }
  return x;
}

/// Winner among explicitly drawn population indices: minimal fitness, ties to
/// the lowest population index.
inline std::size_t tournament_winner(std::span<const Chromosome> population, std::span<const std::size_t> draws) {
  if (population.empty()) throw Error(ErrorKind::EmptyPopulation, "tournament over empty population");
  if (draws.empty()) throw Error(ErrorKind::InvalidConfig, "tournament needs at least one draw");
  std::size_t winner = draws.front();
  for (std::size_t idx : draws) {
    const auto& f = population[idx].fitness;
    const auto& best = population[winner].fitness;
    if (!f || !best) throw Error(ErrorKind::MissingFitness, "tournament member has no fitness");
    if (*f < *best || (*f == *best && idx < winner)) winner = idx;
  }
  return winner;
}

/// Draws k members uniformly with replacement and returns the winner's index.
inline std::size_t tournament_select_index(std::span<const Chromosome> population, std::size_t k, Rng& rng) {
  if (population.empty()) throw Error(ErrorKind::EmptyPopulation, "tournament over empty population");
  if (k < 2) throw Error(ErrorKind::InvalidConfig, "tournament size must be >= 2");
  std::vector<std::size_t> draws(k);
  for (auto& d : draws) d = static_cast<std::size_t>(rng.index(population.size()));
  return tournament_winner(population, draws);
}

inline const Chromosome& tournament_select(std::span<const Chromosome> population, std::size_t k, Rng& rng) {
  return population[tournament_select_index(population, k, rng)];
}

/// Swaps the 1-based segment (first_cut, second_cut] between the parents.
inline std::pair<Chromosome, Chromosome> two_point_crossover_at(const Chromosome& a, const Chromosome& b,
                                                                std::size_t first_cut, std::size_t second_cut) {
  if (a.bits.size() != b.bits.size()) throw Error(ErrorKind::LengthMismatch, "parents differ in length");
  if (!(first_cut < second_cut && second_cut <= a.bits.size())) {
    throw Error(ErrorKind::InvalidConfig, "cut positions must satisfy first < second <= length");
  }
  Chromosome c1{a.bits, std::nullopt};
  Chromosome c2{b.bits, std::nullopt};
  for (std::size_t i = first_cut; i < second_cut; ++i) std::swap(c1.bits[i], c2.bits[i]);
  return {std::move(c1), std::move(c2)};
}

inline std::pair<Chromosome, Chromosome> two_point_crossover(const Chromosome& a, const Chromosome& b, double p_c,
                                                             Rng& rng) {
  if (a.bits.size() != b.bits.size()) throw Error(ErrorKind::LengthMismatch, "parents differ in length");
  const std::size_t length = a.bits.size();
  if (length < 3) throw Error(ErrorKind::LengthMismatch, "two-point crossover needs at least 3 bits");
  if (!rng.bernoulli(p_c)) return {Chromosome{a.bits, std::nullopt}, Chromosome{b.bits, std::nullopt}};
  // Two distinct cut positions from {1, ..., length - 1}.
  std::size_t i = 1 + static_cast<std::size_t>(rng.index(length - 1));
  std::size_t j = 1 + static_cast<std::size_t>(rng.index(length - 2));
  if (j >= i) ++j;
  if (j < i) std::swap(i, j);
  return two_point_crossover_at(a, b, i, j);
}

inline Chromosome bitflip_mutate(Chromosome c, double p_m, Rng& rng) {
  if (p_m <= 0.0) return c;
  bool flipped = false;
  if (p_m >= 1.0) {
    for (auto& bit : c.bits) bit ^= 1U;
    flipped = !c.bits.empty();
  } else {
    for (auto& bit : c.bits) {
      if (rng.bernoulli(p_m)) {
        bit ^= 1U;
        flipped = true;
      }
    }
  }
  if (flipped) c.fitness.reset();
  return c;
}

/// Indices of `population` ordered by fitness, ties by index.
inline std::vector<std::size_t> rank_by_fitness(std::span<const Chromosome> population) {
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (const auto& c : population) {
    if (!c.fitness) throw Error(ErrorKind::MissingFitness, "ranking requires fitness on every member");
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return *population[l].fitness < *population[r].fitness; });
  return order;
}

/// Next generation: the elite_count best of `old` followed by the first
/// |old| - elite_count offspring.
inline std::vector<Chromosome> replace(std::span<const Chromosome> old, std::span<const Chromosome> offspring,
                                       std::size_t elite_count) {
  if (elite_count > old.size()) throw Error(ErrorKind::InvalidConfig, "elite_count exceeds population size");
  const std::size_t needed = old.size() - elite_count;
  if (offspring.size() < needed) {
    throw Error(ErrorKind::InsufficientOffspring,
                "need " + std::to_string(needed) + " offspring, got " + std::to_string(offspring.size()));
  }
  std::vector<Chromosome> next;
  next.reserve(old.size());
  if (elite_count > 0) {
    const auto order = rank_by_fitness(old);
    for (std::size_t i = 0; i < elite_count; ++i) next.push_back(old[order[i]]);
  }
  next.insert(next.end(), offspring.begin(), offspring.begin() + static_cast<std::ptrdiff_t>(needed));
  return next;
}

namespace detail {

inline std::string_view bits_key(const Bits& bits) {
  return {reinterpret_cast<const char*>(bits.data()), bits.size()};
}

}  // namespace detail

/// Runs the GA on an arbitrary objective `double(std::span<const double>)`
/// over `box` until the next generation's evaluations would exceed the budget.
/// Fitness is computed once per distinct bitstring per generation; elites and
/// unchanged copies of parents keep their fitness. The number of generations
/// is additionally capped at budget.cap() so runs with no variation terminate.
template <class Objective>
RunResult run_ga(Objective&& objective, const Box& box, const GAConfig& config, EvaluationBudget& budget) {
  config.validate();
  if (config.population_size > budget.remaining()) {
    throw Error(ErrorKind::InvalidConfig, "population_size exceeds the remaining evaluation budget");
  }
  const std::size_t dim = box.dim();
  const std::size_t length = dim * config.bits_per_dim;
  if (length < 3) throw Error(ErrorKind::InvalidConfig, "chromosome must have at least 3 bits");
  const double p_m = config.mutation_prob_for(dim);
  const std::size_t n = config.population_size;
  const std::size_t fresh_per_generation = n - config.elite_count;

  Rng rng(config.seed);
  RunResult result;
  result.seed = config.seed;

  double best_value = 0.0;
  Bits best_bits;
  bool have_best = false;
  std::uint64_t evaluations = 0;

  auto score = [&](const Bits& bits) {
    budget.charge();
    ++evaluations;
    const Point x = decode(bits, box, config.bits_per_dim);
    const double value = objective(std::span<const double>(x));
    if (!have_best || value < best_value) {
      best_value = value;
      best_bits = bits;
      have_best = true;
    }
    return value;
  };

  std::vector<Chromosome> population(n);
  for (auto& c : population) {
    c.bits.resize(length);
    for (auto& bit : c.bits) bit = rng.bit() ? 1U : 0U;
  }
  {
    std::unordered_map<std::string_view, double> seen;
    for (auto& c : population) {
      auto it = seen.find(detail::bits_key(c.bits));
      c.fitness = it != seen.end() ? it->second : score(c.bits);
      seen.emplace(detail::bits_key(c.bits), *c.fitness);
    }
  }
  result.generation_best_history.push_back(best_value);

  const std::size_t pairs = (fresh_per_generation + 1) / 2;
  for (std::uint64_t generation = 1; generation <= budget.cap(); ++generation) {
    std::vector<Chromosome> offspring;
    offspring.reserve(2 * pairs);
    for (std::size_t p = 0; p < pairs; ++p) {
      const auto& a = population[tournament_select_index(population, config.tournament_size, rng)];
      const auto& b = population[tournament_select_index(population, config.tournament_size, rng)];
      auto [c1, c2] = two_point_crossover(a, b, config.crossover_prob, rng);
      offspring.push_back(bitflip_mutate(std::move(c1), p_m, rng));
      offspring.push_back(bitflip_mutate(std::move(c2), p_m, rng));
    }
    offspring.resize(fresh_per_generation);

    std::unordered_map<std::string_view, double> known;
    for (const auto& c : population) known.emplace(detail::bits_key(c.bits), *c.fitness);
    std::unordered_map<std::string_view, bool> pending;
    for (const auto& c : offspring) {
      const auto key = detail::bits_key(c.bits);
      if (!known.contains(key)) pending.emplace(key, true);
    }
    if (pending.size() > budget.remaining()) break;

    for (auto& c : offspring) {
      const auto key = detail::bits_key(c.bits);
      if (auto it = known.find(key); it != known.end()) {
        c.fitness = it->second;
      } else {
        c.fitness = score(c.bits);
        known.emplace(key, *c.fitness);
      }
    }
    population = replace(population, offspring, config.elite_count);
    result.generation_best_history.push_back(best_value);
  }

  result.best_value = best_value;
  result.best_point = decode(best_bits, box, config.bits_per_dim);
  result.evaluations_used = evaluations;
  return result;
}

inline RunResult run_ga(FunctionId fid, const Box& box, const GAConfig& config, EvaluationBudget& budget) {
  return run_ga([fid](std::span<const double> x) { return evaluate(fid, x); }, box, config, budget);
}

}  // namespace hctps
