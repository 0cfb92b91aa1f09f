#include <gtest/gtest.h>

#include <cmath>

#include "freshroute/evaluator.hpp"
#include "freshroute/generator.hpp"
#include "test_support.hpp"

using namespace freshroute;
using freshroute::testing::after_plan;
using freshroute::testing::before_plan;
using freshroute::testing::case_study;

namespace {

// One store at distance 0 from the depot, so it is reached at depot_open.
Instance single_store_at_depot(TimeWindow window) {
    Instance inst = freshroute::testing::uniform_instance(1, 1, 0.0);
    inst.depot_open = 360;
    inst.stores[0].accept = window;
    return inst;
}

std::vector<Instance> random_instances(std::size_t count, std::size_t stores, int vehicles) {
    std::vector<Instance> out;
    for (std::size_t s = 0; s < count; ++s) {
        GeneratorParams p;
        p.store_count = stores;
        p.vehicle_count = vehicles;
        p.seed = 1000 + s;
        p.window_tightness = 0.8;
        out.push_back(generate_instance(p));
    }
    return out;
}

} // namespace

TEST(PropagateTimesTest, SingleStoreRouteUsesDepotLeg) {
    const auto &inst = case_study();
    const auto t = propagate_times(inst, {6});
    ASSERT_EQ(t.stops.size(), 1u);
    const double depot_leg = inst.distances(0, 6); // km == minutes at 60 km/h
    EXPECT_DOUBLE_EQ(t.stops[0].arrival, 360 + depot_leg);
    EXPECT_DOUBLE_EQ(t.stops[0].departure - t.stops[0].service_start, 54.0);
    EXPECT_DOUBLE_EQ(t.return_time, 360 + depot_leg + 54 + depot_leg);
}

TEST(PropagateTimesTest, EmptyRouteStaysHome) {
    const auto t = propagate_times(case_study(), {});
    EXPECT_TRUE(t.stops.empty());
    EXPECT_DOUBLE_EQ(t.return_time, 360.0);
}

TEST(PropagateTimesTest, HandPropagatedTwoStopRoute) {
    const auto &inst = case_study();
    const auto t = propagate_times(inst, {2, 1});
    ASSERT_EQ(t.stops.size(), 2u);
    // 06:00 + 59 min depot leg, 30 min handling, 1 km to store 1.
    EXPECT_DOUBLE_EQ(t.stops[0].arrival, 419.0);
    EXPECT_DOUBLE_EQ(t.stops[0].departure, 449.0);
    EXPECT_DOUBLE_EQ(t.stops[1].arrival, t.stops[0].arrival + 30 + 1);
    EXPECT_DOUBLE_EQ(t.stops[1].departure, 468.0);
    EXPECT_DOUBLE_EQ(t.return_time, 528.0);
    // Store 2 opens at 07:00, one minute after arrival.
    EXPECT_DOUBLE_EQ(t.stops[0].early_by, 1.0);
    EXPECT_DOUBLE_EQ(t.stops[1].late_by, 0.0);
}

TEST(PropagateTimesTest, NoWaitingWhenEarly) {
    // Store 8 opens 07:00; reached at 06:53 from the depot.
    const auto t = propagate_times(case_study(), {8});
    EXPECT_DOUBLE_EQ(t.stops[0].arrival, 413.0);
    EXPECT_DOUBLE_EQ(t.stops[0].service_start, 413.0);
    EXPECT_DOUBLE_EQ(t.stops[0].early_by, 7.0);
    EXPECT_DOUBLE_EQ(t.stops[0].late_by, 0.0);
}

TEST(TransportCostTest, SumsBothDepotLegs) {
    const auto &inst = case_study();
    const double a = inst.distances(0, 2);
    const double b = inst.distances(1, 0);
    EXPECT_DOUBLE_EQ(transport_cost(inst, RoutePlan{{{2, 1}, {}}}), 1.8 * (a + 1 + b));
}

TEST(TransportCostTest, EmptyPlanCostsNothing) {
    EXPECT_EQ(transport_cost(case_study(), RoutePlan{{{}, {}}}), 0.0);
}

TEST(TransportCostTest, ShuttleIsTwiceTheDepotLeg) {
    const auto &inst = case_study();
    for (int i = 1; i <= 8; ++i) {
        EXPECT_DOUBLE_EQ(transport_cost(inst, RoutePlan{{{i}, {}}}), 1.8 * 2 * inst.distances(0, i));
    }
}

TEST(PenaltyCostTest, InsideWindowIsFree) {
    const Instance inst = single_store_at_depot({300, 400});
    EXPECT_EQ(penalty_cost(inst, propagate_times(inst, {1})), 0.0);
}

TEST(PenaltyCostTest, ThirtyMinutesEarly) {
    const Instance inst = single_store_at_depot({390, 600});
    EXPECT_DOUBLE_EQ(penalty_cost(inst, propagate_times(inst, {1})), 15.0);
}

TEST(PenaltyCostTest, TenMinutesLate) {
    const Instance inst = single_store_at_depot({300, 350});
    EXPECT_DOUBLE_EQ(penalty_cost(inst, propagate_times(inst, {1})), 10.0);
}

TEST(PenaltyCostTest, WindowBoundsAreInclusive) {
    EXPECT_EQ(penalty_cost(single_store_at_depot({360, 400}), propagate_times(single_store_at_depot({360, 400}), {1})),
              0.0);
    EXPECT_EQ(penalty_cost(single_store_at_depot({300, 360}), propagate_times(single_store_at_depot({300, 360}), {1})),
              0.0);
}

TEST(CheckConstraintsTest, BeforePlanOverloadsVehicleTwo) {
    const auto &inst = case_study();
    const auto violations = check_constraints(inst, before_plan());
    ASSERT_EQ(violations.size(), 1u);
    EXPECT_EQ(violations[0].kind, ViolationKind::Capacity);
    EXPECT_EQ(violations[0].vehicle, 1u);
    EXPECT_NEAR(violations[0].amount, 0.2, 1e-12);
}

TEST(CheckConstraintsTest, AfterPlanIsClean) { EXPECT_TRUE(check_constraints(case_study(), after_plan()).empty()); }

TEST(CheckConstraintsTest, MissingStore) {
    const auto violations = check_constraints(case_study(), RoutePlan{{{4, 1, 2, 8}, {5, 7, 6}}});
    ASSERT_EQ(violations.size(), 1u);
    EXPECT_EQ(violations[0].kind, ViolationKind::MissingStore);
    EXPECT_EQ(violations[0].store, 3);
    EXPECT_TRUE(violations[0].structural());
}

TEST(CheckConstraintsTest, DuplicateUnknownAndShape) {
    const auto violations = check_constraints(case_study(), RoutePlan{{{4, 1, 2, 3, 8, 1}, {5, 7, 6, 42}, {}}});
    std::vector<ViolationKind> kinds;
    for (const auto &v : violations) {
        kinds.push_back(v.kind);
    }
    EXPECT_NE(std::find(kinds.begin(), kinds.end(), ViolationKind::VehicleCount), kinds.end());
    EXPECT_NE(std::find(kinds.begin(), kinds.end(), ViolationKind::UnknownStore), kinds.end());
    EXPECT_NE(std::find(kinds.begin(), kinds.end(), ViolationKind::DuplicateStore), kinds.end());
}

TEST(CheckConstraintsTest, RangeOverrun) {
    Instance inst = case_study();
    inst.fleet.max_route_distance = 100;
    const auto violations = check_constraints(inst, after_plan());
    ASSERT_EQ(violations.size(), 1u);
    EXPECT_EQ(violations[0].kind, ViolationKind::Range);
    EXPECT_EQ(violations[0].vehicle, 0u);
    EXPECT_DOUBLE_EQ(violations[0].amount, 17.0);
}

TEST(EvaluateTest, CaseStudyLoadFactorsAreExact) {
    const auto &inst = case_study();
    const auto after = evaluate(inst, after_plan());
    EXPECT_EQ(after.per_vehicle[0].load_factor, 0.9);
    EXPECT_EQ(after.per_vehicle[1].load_factor, 0.8);
    EXPECT_TRUE(after.feasible);
    const auto before = evaluate(inst, before_plan());
    EXPECT_EQ(before.per_vehicle[0].load_factor, 0.6);
    EXPECT_EQ(before.per_vehicle[1].load_factor, 1.1);
    EXPECT_FALSE(before.feasible);
}

TEST(EvaluateTest, FixtureAfterPlanMileageAndCost) {
    const auto cost = evaluate(case_study(), after_plan());
    EXPECT_DOUBLE_EQ(cost.per_vehicle[0].distance, 117.0);
    EXPECT_DOUBLE_EQ(cost.per_vehicle[1].distance, 86.0);
    EXPECT_DOUBLE_EQ(cost.total_transport, 1.8 * 117 + 1.8 * 86);
    EXPECT_EQ(cost.total_penalty, 0.0);
}

TEST(EvaluateTest, ZeroStoreInstance) {
    const Instance inst = freshroute::testing::uniform_instance(0, 2);
    const auto cost = evaluate(inst, RoutePlan{{{}, {}}});
    EXPECT_EQ(cost.total, 0.0);
    EXPECT_TRUE(cost.feasible);
    for (const auto &v : cost.per_vehicle) {
        EXPECT_EQ(v, VehicleCost{});
    }
}

TEST(EvaluateTest, UnknownStoreThrows) {
    EXPECT_THROW(evaluate(case_study(), RoutePlan{{{9}, {}}}), std::invalid_argument);
}

TEST(EvaluateTest, AdditiveIdentitiesOnRandomPlans) {
    Rng rng(7);
    for (const auto &inst : random_instances(20, 6, 3)) {
        for (int rep = 0; rep < 50; ++rep) {
            const RoutePlan plan = freshroute::testing::random_plan(inst.store_count(), 3, rng);
            const auto cost = evaluate(inst, plan);
            double transport = 0, penalty = 0;
            for (const auto &v : cost.per_vehicle) {
                transport += v.transport_cost;
                penalty += v.penalty_cost;
                EXPECT_EQ(v.load_factor, static_cast<double>(v.load.kg()) / inst.fleet.capacity.kg());
            }
            EXPECT_EQ(cost.total_transport, transport);
            EXPECT_EQ(cost.total_penalty, penalty);
            EXPECT_EQ(cost.total, cost.total_transport + cost.total_penalty);
            EXPECT_EQ(cost.total_transport, transport_cost(inst, plan));
        }
    }
}

TEST(EvaluateTest, ArrivalChainHoldsExactly) {
    Rng rng(11);
    for (const auto &inst : random_instances(10, 7, 2)) {
        for (int rep = 0; rep < 50; ++rep) {
            const RoutePlan plan = freshroute::testing::random_plan(inst.store_count(), 2, rng);
            for (const auto &route : plan.routes) {
                const auto t = propagate_times(inst, route);
                for (std::size_t m = 0; m + 1 < t.stops.size(); ++m) {
                    const double gap = t.stops[m + 1].arrival - t.stops[m].departure;
                    EXPECT_NEAR(gap, travel_time(inst, t.stops[m].store_id, t.stops[m + 1].store_id), 1e-9);
                }
                for (const auto &s : t.stops) {
                    EXPECT_TRUE(s.early_by == 0.0 || s.late_by == 0.0);
                    EXPECT_DOUBLE_EQ(s.departure, s.service_start + inst.store(s.store_id).handling_time);
                }
            }
        }
    }
}

TEST(EvaluateTest, PenaltyZeroIffEveryArrivalInsideWindow) {
    Rng rng(5);
    int zero = 0, positive = 0;
    for (const auto &inst : random_instances(20, 6, 2)) {
        for (int rep = 0; rep < 50; ++rep) {
            const RoutePlan plan = freshroute::testing::random_plan(inst.store_count(), 2, rng);
            bool all_inside = true;
            for (const auto &route : plan.routes) {
                for (const auto &s : propagate_times(inst, route).stops) {
                    all_inside = all_inside && inst.store(s.store_id).accept.contains(s.arrival);
                }
            }
            const auto cost = evaluate(inst, plan);
            EXPECT_EQ(cost.total_penalty == 0.0, all_inside);
            (all_inside ? zero : positive)++;
        }
    }
    // Both branches are exercised.
    EXPECT_GT(zero, 0);
    EXPECT_GT(positive, 0);
}

TEST(EvaluateTest, LoadIgnoresVisitingOrder) {
    const auto &inst = case_study();
    Route route{4, 1, 2, 3, 8};
    const Mass load = route_load(inst, route);
    std::sort(route.begin(), route.end());
    do {
        EXPECT_EQ(route_load(inst, route), load);
    } while (std::next_permutation(route.begin(), route.end()));
}

TEST(EvaluateTest, RouteDistanceIsLegByLegSum) {
    Rng rng(3);
    for (const auto &inst : random_instances(10, 7, 1)) {
        const RoutePlan plan = freshroute::testing::random_plan(inst.store_count(), 1, rng);
        const Route &route = plan.routes[0];
        double legs = inst.distances(0, static_cast<std::size_t>(route.front()));
        for (std::size_t i = 0; i + 1 < route.size(); ++i) {
            legs += inst.distances(static_cast<std::size_t>(route[i]), static_cast<std::size_t>(route[i + 1]));
        }
        legs += inst.distances(static_cast<std::size_t>(route.back()), 0);
        EXPECT_EQ(route_distance(inst, route), legs);

        // Appending a store swaps the closing leg for two non-negative legs.
        Route shorter(route.begin(), route.end() - 1);
        const double replaced = inst.distances(static_cast<std::size_t>(shorter.back()), 0);
        const double added = inst.distances(static_cast<std::size_t>(shorter.back()),
                                            static_cast<std::size_t>(route.back())) +
                             inst.distances(static_cast<std::size_t>(route.back()), 0);
        EXPECT_NEAR(route_distance(inst, route) - route_distance(inst, shorter), added - replaced, 1e-9);
    }
}

TEST(EvaluateTest, PureFunction) {
    const auto &inst = case_study();
    EXPECT_EQ(evaluate(inst, before_plan()), evaluate(inst, before_plan()));
}

TEST(ViolationUnitsTest, EqualOverrunsCompareEqualRegardlessOfSummation) {
    CostBreakdown split;
    split.violations = {{ViolationKind::Capacity, 0, 0, 0.015}, {ViolationKind::Capacity, 1, 0, 0.146}};
    CostBreakdown single;
    single.violations = {{ViolationKind::Capacity, 0, 0, 0.161}};
    EXPECT_NE(violation_magnitude(split), violation_magnitude(single));
    EXPECT_EQ(violation_units(split), 161000);
    EXPECT_EQ(violation_units(single), 161000);
    single.violations.push_back({ViolationKind::MissingStore, std::nullopt, 3, 1});
    EXPECT_EQ(violation_units(single), 161000);
}
