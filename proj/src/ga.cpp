#include "freshroute/ga.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace freshroute {

namespace {

struct Scored {
    Chromosome chromosome;
    CostBreakdown cost;
    double penalized = 0;
    double fitness = 0;
};

Scored score(const Instance &instance, Chromosome chromosome) {
    Scored s;
    s.cost = evaluate(instance, decode(chromosome));
    s.penalized = penalized_cost(instance, s.cost);
    s.fitness = fitness_from_penalized(s.penalized);
    s.chromosome = std::move(chromosome);
    return s;
}

// Two distinct boundary points in [0, n] -> a non-empty slice.
std::pair<std::size_t, std::size_t> random_slice(std::size_t n, Rng &rng) {
    auto [p, q] = rng.distinct_pair(n + 1);
    return {std::min(p, q), std::max(p, q)};
}

const Chromosome &roulette(const std::vector<Scored> &population, double total_fitness, Rng &rng) {
    const double target = rng.uniform01() * total_fitness;
    double running = 0.0;
    for (const auto &s : population) {
        running += s.fitness;
        if (target < running) {
            return s.chromosome;
        }
    }
    return population.back().chromosome;
}

TraceEntry trace_of(std::size_t generation, const Scored &best) {
    return {generation, best.fitness, best.penalized, best.cost.total, best.cost.feasible};
}

} // namespace

std::vector<std::string> validate_config(const GaConfig &config) {
    std::vector<std::string> out;
    const auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (!rate_ok(config.crossover_rate)) {
        out.push_back(fmt::format("crossover rate {} outside [0, 1]", config.crossover_rate));
    }
    if (!rate_ok(config.mutation_rate)) {
        out.push_back(fmt::format("mutation rate {} outside [0, 1]", config.mutation_rate));
    }
    if (!rate_ok(config.inversion_rate)) {
        out.push_back(fmt::format("inversion rate {} outside [0, 1]", config.inversion_rate));
    }
    if (config.population_size < 2) {
        out.push_back(fmt::format("population size {} must be at least 2", config.population_size));
    }
    if (config.elitism_count < 1 || config.elitism_count >= config.population_size) {
        out.push_back(fmt::format("elitism count {} must be in [1, population size)", config.elitism_count));
    }
    return out;
}

double penalized_cost(const Instance &instance, const CostBreakdown &cost) {
    return cost.total + instance.coeffs.infeasibility_weight * violation_magnitude(cost);
}

double internal_fitness(const Instance &instance, const Chromosome &chromosome) {
    return fitness_from_penalized(penalized_cost(instance, evaluate(instance, decode(chromosome))));
}

Chromosome random_chromosome(std::size_t store_count, int vehicle_count, Rng &rng) {
    // Shuffle stores together with K-1 separator markers (0).
    std::vector<int> genes(store_count + static_cast<std::size_t>(vehicle_count - 1), 0);
    std::iota(genes.begin(), genes.begin() + static_cast<std::ptrdiff_t>(store_count), 1);
    rng.shuffle(std::span<int>(genes));

    Chromosome c;
    c.stores.reserve(store_count);
    for (const int g : genes) {
        if (g == 0) {
            c.cuts.push_back(c.stores.size());
        } else {
            c.stores.push_back(g);
        }
    }
    return c;
}

std::vector<Chromosome> initialize_population(const Instance &instance, const GaConfig &config, Rng &rng) {
    std::vector<Chromosome> out;
    out.reserve(config.population_size);
    for (std::size_t i = 0; i < config.population_size; ++i) {
        out.push_back(random_chromosome(instance.store_count(), instance.fleet.vehicle_count, rng));
    }
    return out;
}

Chromosome order_crossover(const Chromosome &keep, const Chromosome &donor, std::size_t begin, std::size_t end) {
    const std::size_t n = keep.stores.size();
    Chromosome child = keep;
    if (n == 0) {
        return child;
    }
    std::vector<bool> kept(n + 1, false);
    for (std::size_t i = begin; i < end; ++i) {
        kept[static_cast<std::size_t>(keep.stores[i])] = true;
    }
    std::size_t write = end % n;
    for (std::size_t step = 0; step < n; ++step) {
        const int id = donor.stores[(end + step) % n];
        if (kept[static_cast<std::size_t>(id)]) {
            continue;
        }
        child.stores[write] = id;
        write = (write + 1) % n;
    }
    return child;
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome &a, const Chromosome &b, Rng &rng) {
    const std::size_t n = a.stores.size();
    if (n < 2) {
        return {a, b};
    }
    const auto [begin, end] = random_slice(n, rng);
    return {order_crossover(a, b, begin, end), order_crossover(b, a, begin, end)};
}

Chromosome swap_stores(Chromosome c, std::size_t i, std::size_t j) {
    std::swap(c.stores.at(i), c.stores.at(j));
    return c;
}

Chromosome mutate(Chromosome c, Rng &rng, double rate) {
    if (!rng.chance(rate) || c.stores.size() < 2) {
        return c;
    }
    const auto [i, j] = rng.distinct_pair(c.stores.size());
    return swap_stores(std::move(c), i, j);
}

Chromosome reverse_slice(Chromosome c, std::size_t begin, std::size_t end) {
    std::reverse(c.stores.begin() + static_cast<std::ptrdiff_t>(begin),
                 c.stores.begin() + static_cast<std::ptrdiff_t>(end));
    return c;
}

Chromosome invert(Chromosome c, Rng &rng, double rate) {
    if (!rng.chance(rate) || c.stores.size() < 2) {
        return c;
    }
    const auto [begin, end] = random_slice(c.stores.size(), rng);
    return reverse_slice(std::move(c), begin, end);
}

SolveReport solve(const Instance &instance, const GaConfig &config) {
    if (auto problems = validate_instance(instance); !problems.empty()) {
        throw InstanceError(std::move(problems));
    }
    if (auto problems = validate_config(config); !problems.empty()) {
        throw std::invalid_argument(fmt::format("bad GA config: {}", fmt::join(problems, "; ")));
    }

    Rng rng(config.rng_seed);
    const std::size_t n = config.population_size;

    std::vector<Scored> population;
    population.reserve(n);
    for (auto &c : initialize_population(instance, config, rng)) {
        population.push_back(score(instance, std::move(c)));
    }

    const auto best_of = [](const std::vector<Scored> &pop) {
        return std::min_element(pop.begin(), pop.end(),
                                [](const Scored &a, const Scored &b) { return a.penalized < b.penalized; });
    };

    Scored best = *best_of(population);
    SolveReport report;
    report.trace.push_back(trace_of(0, best));

    std::size_t generation = 0;
    while (generation < config.max_generations && generation - report.converged_at < config.stall_generations) {
        ++generation;

        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return population[a].penalized < population[b].penalized;
        });

        std::vector<Chromosome> next;
        next.reserve(n);
        for (std::size_t e = 0; e < config.elitism_count; ++e) {
            next.push_back(population[order[e]].chromosome);
        }

        const double total_fitness = std::accumulate(population.begin(), population.end(), 0.0,
                                                     [](double acc, const Scored &s) { return acc + s.fitness; });
        while (next.size() < n) {
            const Chromosome &pa = roulette(population, total_fitness, rng);
            const Chromosome &pb = roulette(population, total_fitness, rng);
            auto [ca, cb] = rng.chance(config.crossover_rate) ? crossover(pa, pb, rng) : std::pair{pa, pb};
            next.push_back(invert(mutate(std::move(ca), rng, config.mutation_rate), rng, config.inversion_rate));
            if (next.size() < n) {
                next.push_back(invert(mutate(std::move(cb), rng, config.mutation_rate), rng, config.inversion_rate));
            }
        }

        std::vector<Scored> scored;
        scored.reserve(n);
        for (auto &c : next) {
            scored.push_back(score(instance, std::move(c)));
        }
        population = std::move(scored);

        const auto champion = best_of(population);
        if (champion->penalized < best.penalized) {
            best = *champion;
            report.converged_at = generation;
        }
        report.trace.push_back(trace_of(generation, best));
    }

    report.generations_run = generation;
    report.best_chromosome = best.chromosome;
    report.best_plan = canonicalize(decode(best.chromosome));
    report.best_cost = evaluate(instance, report.best_plan);
    return report;
}

} // namespace freshroute
