#include "freshroute/oracle.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include <fmt/format.h>

namespace freshroute {

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > saturated / a) {
        return saturated;
    }
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return b > saturated - a ? saturated : a + b; }

class Enumerator {
public:
    explicit Enumerator(const Instance &instance) : instance_(instance) {}

    OracleResult run() {
        assign(1);
        OracleResult out;
        out.plans_enumerated = enumerated_;
        out.optimum_plan = std::move(best_plan_);
        out.optimum_cost = evaluate(instance_, out.optimum_plan);
        out.optimum_is_feasible = out.optimum_cost.feasible;
        return out;
    }

private:
    // Set partitions as restricted growth strings: store s joins an existing
    // route or opens the next one, so the route holding store 1 is always
    // route 0 and vehicle permutations are never revisited.
    void assign(int store) {
        if (static_cast<std::size_t>(store) > instance_.store_count()) {
            order(0);
            return;
        }
        const std::size_t open = blocks_.size();
        for (std::size_t b = 0; b < open; ++b) {
            blocks_[b].push_back(store);
            assign(store + 1);
            blocks_[b].pop_back();
        }
        if (open < static_cast<std::size_t>(instance_.fleet.vehicle_count)) {
            blocks_.push_back({store});
            assign(store + 1);
            blocks_.pop_back();
        }
    }

    // Every visiting order of every route; blocks arrive sorted ascending.
    void order(std::size_t block) {
        if (block == blocks_.size()) {
            consider();
            return;
        }
        Route &route = blocks_[block];
        do {
            order(block + 1);
        } while (std::next_permutation(route.begin(), route.end()));
    }

    void consider() {
        ++enumerated_;
        RoutePlan plan;
        plan.routes = blocks_;
        plan.routes.resize(static_cast<std::size_t>(instance_.fleet.vehicle_count));
        const CostBreakdown cost = evaluate(instance_, plan);
        const std::int64_t violation = violation_units(cost);

        if (best_violation_) {
            if (violation > *best_violation_) {
                return;
            }
            if (violation == *best_violation_) {
                if (cost.total > best_total_) {
                    return;
                }
                if (cost.total == best_total_) {
                    RoutePlan canonical = canonicalize(plan);
                    if (!(canonical < best_plan_)) {
                        return;
                    }
                    best_plan_ = std::move(canonical);
                    return;
                }
            }
        }
        best_violation_ = violation;
        best_total_ = cost.total;
        best_plan_ = canonicalize(std::move(plan));
    }

    const Instance &instance_;
    std::vector<Route> blocks_;
    std::uint64_t enumerated_ = 0;
    std::optional<std::int64_t> best_violation_;
    double best_total_ = 0;
    RoutePlan best_plan_;
};

} // namespace

EnumerationTooLarge::EnumerationTooLarge(std::uint64_t count, std::uint64_t limit)
    : std::runtime_error(fmt::format("exhaustive search would enumerate {} plans, above the limit of {}",
                                     count == saturated ? std::string("more than 2^64") : std::to_string(count),
                                     limit)),
      count_(count) {}

std::uint64_t count_distinct_plans(std::size_t store_count, int vehicle_count) {
    if (store_count == 0) {
        return 1;
    }
    if (vehicle_count < 1) {
        return 0;
    }
    const auto k_max = std::min<std::size_t>(store_count, static_cast<std::size_t>(vehicle_count));
    // lah[k] = L(m, k), grown row by row with L(m+1, k) = (m+k) L(m, k) + L(m, k-1).
    std::vector<std::uint64_t> lah(k_max + 1, 0);
    lah[1] = 1; // L(1, 1)
    for (std::size_t m = 1; m < store_count; ++m) {
        for (std::size_t k = std::min(m + 1, k_max); k >= 1; --k) {
            lah[k] = sat_add(sat_mul(m + k, lah[k]), lah[k - 1]);
        }
    }
    std::uint64_t total = 0;
    for (std::size_t k = 1; k <= k_max; ++k) {
        total = sat_add(total, lah[k]);
    }
    return total;
}

OracleResult enumerate_optimum(const Instance &instance, std::uint64_t limit) {
    const std::uint64_t count = count_distinct_plans(instance.store_count(), instance.fleet.vehicle_count);
    if (count > limit) {
        throw EnumerationTooLarge(count, limit);
    }
    return Enumerator(instance).run();
}

} // namespace freshroute
