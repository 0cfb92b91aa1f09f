#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "freshroute/chromosome.hpp"
#include "freshroute/evaluator.hpp"
#include "freshroute/model.hpp"
#include "freshroute/random.hpp"

namespace freshroute {

struct GaConfig {
    std::size_t population_size = 10;
    double crossover_rate = 0.7;
    double mutation_rate = 0.1;
    double inversion_rate = 0.1;
    std::size_t max_generations = 100;
    std::size_t stall_generations = 50;
    std::uint64_t rng_seed = 1;
    std::size_t elitism_count = 1;
};

std::vector<std::string> validate_config(const GaConfig &config);

// total + infeasibility_weight * violation magnitude.
double penalized_cost(const Instance &instance, const CostBreakdown &cost);
inline double fitness_from_penalized(double penalized) { return 1.0 / (1.0 + penalized); }
double internal_fitness(const Instance &instance, const Chromosome &chromosome);

// Uniform permutation of stores and separators; every composition of the
// stores into K segments is equally likely.
Chromosome random_chromosome(std::size_t store_count, int vehicle_count, Rng &rng);
std::vector<Chromosome> initialize_population(const Instance &instance, const GaConfig &config, Rng &rng);

// Order crossover: stores[begin, end) of `keep` stay in place, the remaining
// positions are filled, starting after the slice and wrapping around, with the
// missing stores in the order they appear in `donor` (also scanned from
// `end`). Cuts come from `keep`.
Chromosome order_crossover(const Chromosome &keep, const Chromosome &donor, std::size_t begin, std::size_t end);
std::pair<Chromosome, Chromosome> crossover(const Chromosome &a, const Chromosome &b, Rng &rng);

Chromosome swap_stores(Chromosome c, std::size_t i, std::size_t j);
Chromosome mutate(Chromosome c, Rng &rng, double rate);

Chromosome reverse_slice(Chromosome c, std::size_t begin, std::size_t end);
Chromosome invert(Chromosome c, Rng &rng, double rate);

struct TraceEntry {
    std::size_t generation = 0;
    // All fields describe the best chromosome seen up to this generation.
    double best_fitness = 0;
    double best_penalized = 0;
    double best_cost = 0; // true, unpenalized total
    bool best_feasible = false;
    bool operator==(const TraceEntry &) const = default;
};

struct SolveReport {
    RoutePlan best_plan; // canonicalized
    Chromosome best_chromosome;
    CostBreakdown best_cost;
    std::vector<TraceEntry> trace;
    std::size_t generations_run = 0;
    std::size_t converged_at = 0;
    bool operator==(const SolveReport &) const = default;
};

// Generational GA with elitism and roulette selection. Throws InstanceError
// if the instance fails validation and std::invalid_argument for a bad config.
SolveReport solve(const Instance &instance, const GaConfig &config);

} // namespace freshroute
