#pragma once

#include <cstdint>
#include <stdexcept>

#include "freshroute/evaluator.hpp"
#include "freshroute/model.hpp"

namespace freshroute {

struct OracleResult {
    RoutePlan optimum_plan; // canonicalized
    CostBreakdown optimum_cost;
    std::uint64_t plans_enumerated = 0;
    bool optimum_is_feasible = false;
};

class EnumerationTooLarge : public std::runtime_error {
public:
    EnumerationTooLarge(std::uint64_t count, std::uint64_t limit);
    std::uint64_t count() const { return count_; }

private:
    std::uint64_t count_;
};

// Distinct plans for n stores on k identical vehicles: the number of ways to
// split n labelled stores into at most k non-empty ordered routes, i.e. the
// sum of Lah numbers L(n, 1..k). 1 for n = 0. Saturates at UINT64_MAX.
std::uint64_t count_distinct_plans(std::size_t store_count, int vehicle_count);

inline constexpr std::uint64_t default_enumeration_limit = 5'000'000;

// Exhaustive search over every distinct plan. Minimizes violation magnitude,
// then total cost, then the canonical plan in lexicographic order. Throws
// EnumerationTooLarge when the plan count exceeds `limit`.
OracleResult enumerate_optimum(const Instance &instance, std::uint64_t limit = default_enumeration_limit);

} // namespace freshroute
