#include "mutprio/moo.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <numeric>
#include <set>

#include "mutprio/metrics.hpp"

namespace mutprio {

void MooConfig::validate() const {
  if (population_size < 4 || population_size % 2 != 0)
    throw Error(ErrorKind::InvalidArgument, "population size must be even and at least 4");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw Error(ErrorKind::InvalidArgument, "crossover rate must lie in [0, 1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw Error(ErrorKind::InvalidArgument, "mutation rate must lie in [0, 1]");
  if (max_evaluations < population_size)
    throw Error(ErrorKind::InvalidArgument, "evaluation budget is smaller than one population");
}

bool dominates(const Fitness& a, const Fitness& b) noexcept {
  return a.apmk >= b.apmk && a.apmd >= b.apmd && (a.apmk > b.apmk || a.apmd > b.apmd);
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const Fitness> population) {
  const std::size_t n = population.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts(1);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(population[p], population[q]))
        dominated_by[p].push_back(q);
      else if (dominates(population[q], population[p]))
        ++domination_count[p];
    }
    if (domination_count[p] == 0) fronts[0].push_back(p);
  }
  while (!fronts.back().empty()) {
    std::vector<std::size_t> next;
    for (auto p : fronts.back())
      for (auto q : dominated_by[p])
        if (--domination_count[q] == 0) next.push_back(q);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(next));
  }
  fronts.pop_back();
  return fronts;
}

std::vector<double> crowding_distance(std::span<const Fitness> front) {
  const std::size_t n = front.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), kInf);
    return distance;
  }
  std::vector<std::size_t> idx(n);
  for (auto objective : {&Fitness::apmk, &Fitness::apmd}) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return front[a].*objective < front[b].*objective; });
    distance[idx.front()] = kInf;
    distance[idx.back()] = kInf;
    const double range = front[idx.back()].*objective - front[idx.front()].*objective;
    if (range <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < n; ++k)
      distance[idx[k]] += (front[idx[k + 1]].*objective - front[idx[k - 1]].*objective) / range;
  }
  return distance;
}

std::vector<std::size_t> pmx_crossover(std::span<const std::size_t> parent1, std::span<const std::size_t> parent2,
                                       std::size_t cut1, std::size_t cut2) {
  const std::size_t n = parent1.size();
  if (parent2.size() != n) throw Error(ErrorKind::InvalidArgument, "parents differ in length");
  if (!(cut1 < cut2 && cut2 <= n)) throw Error(ErrorKind::InvalidArgument, "crossover cuts must satisfy 0 <= cut1 < cut2 <= n");

  // segment_pos[g] = position of gene g inside the kept segment, or npos.
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> segment_pos(n, npos);
  for (std::size_t k = cut1; k < cut2; ++k) segment_pos[parent1[k]] = k;

  std::vector<std::size_t> child(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= cut1 && k < cut2) {
      child[k] = parent1[k];
      continue;
    }
    std::size_t gene = parent2[k];
    while (segment_pos[gene] != npos) gene = parent2[segment_pos[gene]];
    child[k] = gene;
  }
  return child;
}

Ordering pmx_crossover(const Ordering& parent1, const Ordering& parent2, std::size_t cut1, std::size_t cut2) {
  Ordering child;
  child.sequence = pmx_crossover(std::span(parent1.sequence), std::span(parent2.sequence), cut1, cut2);
  child.provenance = parent1.provenance;
  return child;
}

Ordering swap_mutation(const Ordering& ordering, SplitMix64& rng) {
  const std::size_t n = ordering.size();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "swap mutation needs at least two tests");
  Ordering out = ordering;
  const std::size_t i = rng.uniform_index(n);
  std::size_t j = rng.uniform_index(n - 1);
  if (j >= i) ++j;
  std::swap(out.sequence[i], out.sequence[j]);
  return out;
}

namespace {

struct Individual {
  Ordering ordering;
  Fitness fitness;
  std::size_t rank = 0;
  double crowding = 0.0;
};

void assign_rank_and_crowding(std::vector<Individual>& population) {
  std::vector<Fitness> fitness;
  fitness.reserve(population.size());
  for (const auto& ind : population) fitness.push_back(ind.fitness);
  auto fronts = fast_nondominated_sort(fitness);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    std::vector<Fitness> members;
    for (auto i : fronts[r]) members.push_back(fitness[i]);
    auto crowd = crowding_distance(members);
    for (std::size_t k = 0; k < fronts[r].size(); ++k) {
      population[fronts[r][k]].rank = r;
      population[fronts[r][k]].crowding = crowd[k];
    }
  }
}

Fitness best_of(const std::vector<Individual>& population) {
  Fitness best{-1.0, -1.0};
  for (const auto& ind : population) {
    best.apmk = std::max(best.apmk, ind.fitness.apmk);
    best.apmd = std::max(best.apmd, ind.fitness.apmd);
  }
  return best;
}

}  // namespace

NsgaResult nsga2(const KillMatrix& kill, const MooConfig& config) {
  config.validate();
  const std::size_t n = kill.num_tests();
  const std::size_t pop_size = config.population_size;
  SplitMix64 rng(config.seed);
  NsgaResult result;

  auto evaluate = [&](Individual& ind) {
    auto scores = mutation_scores(ind.ordering, kill);
    ind.fitness = {scores.apmk, scores.apmd};
    ++result.evaluations;
  };

  Provenance provenance{"NSGA-II", config.seed, ""};
  std::vector<Individual> population(pop_size);
  for (auto& ind : population) {
    ind.ordering.sequence.resize(n);
    std::iota(ind.ordering.sequence.begin(), ind.ordering.sequence.end(), std::size_t{0});
    shuffle(std::span(ind.ordering.sequence), rng);
    ind.ordering.provenance = provenance;
  }
  for (auto& ind : population) evaluate(ind);
  assign_rank_and_crowding(population);
  result.best_per_generation.push_back(best_of(population));

  auto tournament = [&]() -> const Individual& {
    const auto& a = population[rng.uniform_index(pop_size)];
    const auto& b = population[rng.uniform_index(pop_size)];
    if (b.rank < a.rank || (b.rank == a.rank && b.crowding > a.crowding)) return b;
    return a;
  };

  std::vector<Individual> offspring;
  while (result.evaluations + pop_size <= config.max_evaluations) {
    offspring.clear();
    while (offspring.size() < pop_size) {
      const Individual& p1 = tournament();
      const Individual& p2 = tournament();
      Individual c1{p1.ordering, {}, 0, 0.0};
      Individual c2{p2.ordering, {}, 0, 0.0};
      if (rng.uniform_real() < config.crossover_rate) {
        const std::size_t a = rng.uniform_index(n);
        const std::size_t b = rng.uniform_index(n);
        const std::size_t lo = std::min(a, b);
        const std::size_t hi = std::max(a, b) + 1;
        c1.ordering = pmx_crossover(p1.ordering, p2.ordering, lo, hi);
        c2.ordering = pmx_crossover(p2.ordering, p1.ordering, lo, hi);
      }
      for (auto* child : {&c1, &c2}) {
        if (rng.uniform_real() < config.mutation_rate && n >= 2) child->ordering = swap_mutation(child->ordering, rng);
      }
      offspring.push_back(std::move(c1));
      if (offspring.size() < pop_size) offspring.push_back(std::move(c2));
    }
    for (auto& child : offspring) evaluate(child);

    std::vector<Individual> combined;
    combined.reserve(2 * pop_size);
    std::move(population.begin(), population.end(), std::back_inserter(combined));
    std::move(offspring.begin(), offspring.end(), std::back_inserter(combined));

    std::vector<Fitness> fitness;
    fitness.reserve(combined.size());
    for (const auto& ind : combined) fitness.push_back(ind.fitness);
    auto fronts = fast_nondominated_sort(fitness);

    population.clear();
    for (const auto& front : fronts) {
      if (population.size() + front.size() <= pop_size) {
        for (auto i : front) population.push_back(std::move(combined[i]));
        continue;
      }
      std::vector<Fitness> members;
      for (auto i : front) members.push_back(fitness[i]);
      auto crowd = crowding_distance(members);
      std::vector<std::size_t> order(front.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b]; });
      for (std::size_t k = 0; population.size() < pop_size; ++k) population.push_back(std::move(combined[front[order[k]]]));
      break;
    }
    assign_rank_and_crowding(population);
    ++result.generations;
    result.best_per_generation.push_back(best_of(population));
  }

  std::set<std::vector<std::size_t>> seen;
  for (auto& ind : population) {
    if (ind.rank != 0) continue;
    if (!seen.insert(ind.ordering.sequence).second) continue;
    result.front.members.push_back({std::move(ind.ordering), ind.fitness});
  }
  return result;
}

namespace {

const FrontMember& select_by(const ParetoFront& front, SplitMix64& rng, double Fitness::*primary, double Fitness::*secondary) {
  if (front.members.empty()) throw Error(ErrorKind::InvalidArgument, "empty Pareto front");
  double best_primary = -std::numeric_limits<double>::infinity();
  for (const auto& m : front.members) best_primary = std::max(best_primary, m.fitness.*primary);
  double best_secondary = -std::numeric_limits<double>::infinity();
  for (const auto& m : front.members)
    if (m.fitness.*primary == best_primary) best_secondary = std::max(best_secondary, m.fitness.*secondary);
  std::vector<std::size_t> ties;
  for (std::size_t k = 0; k < front.members.size(); ++k) {
    const auto& f = front.members[k].fitness;
    if (f.*primary == best_primary && f.*secondary == best_secondary) ties.push_back(k);
  }
  return front.members[ties[rng.uniform_index(ties.size())]];
}

}  // namespace

const FrontMember& select_mok(const ParetoFront& front, SplitMix64& rng) {
  return select_by(front, rng, &Fitness::apmk, &Fitness::apmd);
}

const FrontMember& select_mod(const ParetoFront& front, SplitMix64& rng) {
  return select_by(front, rng, &Fitness::apmd, &Fitness::apmk);
}

}  // namespace mutprio
