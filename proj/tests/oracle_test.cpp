#include <gtest/gtest.h>

#include <set>

#include "freshroute/ga.hpp"
#include "freshroute/generator.hpp"
#include "freshroute/oracle.hpp"
#include "test_support.hpp"

using namespace freshroute;

namespace {

std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Key the oracle minimizes, computed independently from each decoded plan.
struct Best {
    std::int64_t violation = std::numeric_limits<std::int64_t>::max();
    double total = std::numeric_limits<double>::infinity();
};

Best brute_force_best(const Instance &inst) {
    Best best;
    freshroute::testing::for_each_decoded_plan(inst.store_count(), inst.fleet.vehicle_count, [&](const RoutePlan &p) {
        const auto cost = evaluate(inst, p);
        const std::int64_t v = violation_units(cost);
        if (v < best.violation || (v == best.violation && cost.total < best.total)) {
            best = {v, cost.total};
        }
    });
    return best;
}

} // namespace

TEST(CountTest, ClosedFormForEightStoresTwoVehicles) {
    // sum_k C(8,k) k! (8-k)! / 2 = 9 * 8! / 2
    EXPECT_EQ(count_distinct_plans(8, 2), 9 * factorial(8) / 2);
    EXPECT_EQ(count_distinct_plans(8, 2), 181440u);
}

TEST(CountTest, SmallCases) {
    EXPECT_EQ(count_distinct_plans(0, 3), 1u);
    EXPECT_EQ(count_distinct_plans(1, 1), 1u);
    EXPECT_EQ(count_distinct_plans(3, 1), 6u);
    EXPECT_EQ(count_distinct_plans(7, 2), 8 * factorial(7) / 2);
    // More vehicles than stores adds nothing beyond one store per route.
    EXPECT_EQ(count_distinct_plans(3, 5), count_distinct_plans(3, 3));
    EXPECT_EQ(count_distinct_plans(40, 10), std::numeric_limits<std::uint64_t>::max());
}

TEST(CountTest, MatchesDistinctCanonicalPlansFromBruteForce) {
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int k = 1; k <= 3; ++k) {
            std::set<RoutePlan> distinct;
            freshroute::testing::for_each_decoded_plan(n, k, [&](const RoutePlan &p) { distinct.insert(canonicalize(p)); });
            EXPECT_EQ(distinct.size(), count_distinct_plans(n, k)) << "n=" << n << " k=" << k;
        }
    }
}

TEST(OracleTest, CaseStudyEnumeratesEveryPlanOnce) {
    const auto result = enumerate_optimum(freshroute::testing::case_study());
    EXPECT_EQ(result.plans_enumerated, 181440u);
    EXPECT_TRUE(result.optimum_is_feasible);
    EXPECT_EQ(result.optimum_plan, canonicalize(result.optimum_plan));
    const Best best = brute_force_best(freshroute::testing::case_study());
    EXPECT_EQ(best.violation, 0);
    EXPECT_EQ(result.optimum_cost.total, best.total);
}

TEST(OracleTest, SingleStoreSingleVehicle) {
    const Instance inst = freshroute::testing::uniform_instance(1, 1, 5.0);
    const auto result = enumerate_optimum(inst);
    EXPECT_EQ(result.plans_enumerated, 1u);
    EXPECT_EQ(result.optimum_plan, (RoutePlan{{{1}}}));
    EXPECT_EQ(result.optimum_cost, evaluate(inst, RoutePlan{{{1}}}));
}

TEST(OracleTest, InvariantUnderStoreRelabelling) {
    Instance inst = freshroute::testing::uniform_instance(2, 2, 0.0);
    inst.distances(0, 1) = inst.distances(1, 0) = 7.0;
    inst.distances(0, 2) = inst.distances(2, 0) = 11.0;
    inst.distances(1, 2) = inst.distances(2, 1) = 3.0;
    Instance swapped = inst;
    swapped.distances(0, 1) = swapped.distances(1, 0) = 11.0;
    swapped.distances(0, 2) = swapped.distances(2, 0) = 7.0;

    const auto a = enumerate_optimum(inst);
    const auto b = enumerate_optimum(swapped);
    EXPECT_EQ(a.optimum_cost.total, b.optimum_cost.total);
    // The relabelled optimum visits the mirrored stores.
    RoutePlan mirrored = a.optimum_plan;
    for (auto &r : mirrored.routes) {
        for (auto &id : r) {
            id = 3 - id;
        }
    }
    EXPECT_EQ(evaluate(swapped, mirrored).total, b.optimum_cost.total);
}

TEST(OracleTest, MatchesBruteForceOnRandomSmallInstances) {
    for (std::uint64_t s = 1; s <= 15; ++s) {
        GeneratorParams p;
        p.store_count = 3 + s % 4;
        p.vehicle_count = 1 + static_cast<int>(s % 3);
        p.seed = s;
        p.window_tightness = 0.9;
        const Instance inst = generate_instance(p);
        const auto result = enumerate_optimum(inst);
        const Best best = brute_force_best(inst);
        EXPECT_EQ(result.plans_enumerated, count_distinct_plans(p.store_count, p.vehicle_count));
        EXPECT_EQ(violation_units(result.optimum_cost), best.violation) << "seed " << s;
        EXPECT_NEAR(result.optimum_cost.total, best.total, 1e-9) << "seed " << s;
    }
}

TEST(OracleTest, InfeasibleInstanceMinimizesViolationFirst) {
    Instance inst = freshroute::testing::uniform_instance(4, 2, 5.0);
    for (auto &s : inst.stores) {
        s.demand = Mass::from_tons(1.2); // 4.8 t on 2 x 2 t
    }
    const auto result = enumerate_optimum(inst);
    EXPECT_FALSE(result.optimum_is_feasible);
    // Best split is 2 + 2 stores: 0.4 t over on each vehicle.
    EXPECT_NEAR(violation_magnitude(result.optimum_cost), 0.8, 1e-12);
    EXPECT_EQ(result.optimum_plan.routes[0].size(), 2u);
    EXPECT_EQ(result.optimum_plan.routes[1].size(), 2u);
}

TEST(OracleTest, TieBreakPicksLexicographicallySmallestCanonicalPlan) {
    // Zero distances and open windows: all three plans cost nothing, and
    // [[1], [2]] < [[1, 2], []] < [[2, 1], []].
    const Instance inst = freshroute::testing::uniform_instance(2, 2, 0.0);
    const auto result = enumerate_optimum(inst);
    EXPECT_EQ(result.optimum_cost.total, 0.0);
    EXPECT_EQ(result.optimum_plan, (RoutePlan{{{1}, {2}}}));
}

TEST(OracleTest, RefusesOversizedEnumeration) {
    try {
        enumerate_optimum(freshroute::testing::case_study(), 1000);
        FAIL() << "expected refusal";
    } catch (const EnumerationTooLarge &e) {
        EXPECT_EQ(e.count(), 181440u);
        EXPECT_NE(std::string(e.what()).find("181440"), std::string::npos);
    }
}

TEST(OracleTest, LowerBoundOnGa) {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        GeneratorParams p;
        p.store_count = 6;
        p.seed = 500 + s;
        const Instance inst = generate_instance(p);
        const auto oracle = enumerate_optimum(inst);
        GaConfig cfg;
        cfg.rng_seed = s;
        const auto ga = solve(inst, cfg);
        const auto vo = violation_units(oracle.optimum_cost);
        const auto vg = violation_units(ga.best_cost);
        EXPECT_LE(vo, vg);
        if (vo == vg) {
            EXPECT_LE(oracle.optimum_cost.total, ga.best_cost.total + 1e-9);
        }
    }
}
