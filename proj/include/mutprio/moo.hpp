#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mutprio/model.hpp"
#include "mutprio/random.hpp"

namespace mutprio {

struct MooConfig {
  std::size_t population_size = 100;
  double crossover_rate = 0.9;
  double mutation_rate = 0.2;
  std::size_t max_evaluations = 100000;
  std::uint64_t seed = 0;

  void validate() const;
};

// Both objectives are maximized.
struct Fitness {
  double apmk = 0.0;
  double apmd = 0.0;
  friend bool operator==(const Fitness&, const Fitness&) = default;
};

struct FrontMember {
  Ordering ordering;
  Fitness fitness;
};

struct ParetoFront {
  std::vector<FrontMember> members;
};

// a >= b on both objectives and strictly better on at least one.
bool dominates(const Fitness& a, const Fitness& b) noexcept;

// Rank partition: front 0 is non-dominated, front k is non-dominated once
// fronts < k are removed. Indices within a front are ascending.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const Fitness> population);

// Crowding distance of each member of one front, in input order. Boundary
// members on either objective (and all members of fronts of size <= 2) get
// +infinity.
std::vector<double> crowding_distance(std::span<const Fitness> front);

// Partially matched crossover: the child keeps parent1[cut1, cut2) and fills
// the rest from parent2, chasing genes that collide with the kept segment
// through the segment mapping.
std::vector<std::size_t> pmx_crossover(std::span<const std::size_t> parent1, std::span<const std::size_t> parent2,
                                       std::size_t cut1, std::size_t cut2);
Ordering pmx_crossover(const Ordering& parent1, const Ordering& parent2, std::size_t cut1, std::size_t cut2);

// Exchanges two distinct uniformly drawn positions.
Ordering swap_mutation(const Ordering& ordering, SplitMix64& rng);

struct NsgaResult {
  ParetoFront front;
  std::size_t evaluations = 0;
  std::size_t generations = 0;
  // Best value of each objective in the population after each generation
  // (entry 0 is the initial population).
  std::vector<Fitness> best_per_generation;
};

// Generational NSGA-II over test permutations maximizing (APMK, APMD).
// Stops before a generation whose offspring would push the evaluation count
// past max_evaluations. Returns rank 0 of the final population with repeated
// permutations removed.
NsgaResult nsga2(const KillMatrix& kill, const MooConfig& config);

// Highest APMK (MOK) or APMD (MOD); ties go to the other objective, then to a
// uniform draw from `rng`.
const FrontMember& select_mok(const ParetoFront& front, SplitMix64& rng);
const FrontMember& select_mod(const ParetoFront& front, SplitMix64& rng);

}  // namespace mutprio
