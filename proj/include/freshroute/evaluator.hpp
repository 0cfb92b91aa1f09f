#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freshroute/model.hpp"

namespace freshroute {

enum class ViolationKind {
    MissingStore,   // store never visited
    DuplicateStore, // store visited more than once
    UnknownStore,   // id outside 1..N
    VehicleCount,   // plan does not have exactly K routes
    Capacity,       // route load above Q; amount in tons
    Range,          // route distance above L; amount in km
};

const char *to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::optional<std::size_t> vehicle; // 0-based route index
    int store = 0;
    // Overrun for Capacity/Range, occurrence count otherwise.
    double amount = 0;

    // Structural violations mean the plan is not a valid assignment at all.
    bool structural() const { return kind != ViolationKind::Capacity && kind != ViolationKind::Range; }
    std::string describe() const;
    bool operator==(const Violation &) const = default;
};

struct StopTiming {
    int store_id = 0;
    Minutes arrival = 0;
    Minutes service_start = 0;
    Minutes departure = 0;
    Minutes early_by = 0;
    Minutes late_by = 0;
    bool operator==(const StopTiming &) const = default;
};

struct RouteTimeline {
    std::vector<StopTiming> stops;
    Minutes return_time = 0;
    bool operator==(const RouteTimeline &) const = default;
};

struct VehicleCost {
    double transport_cost = 0;
    double penalty_cost = 0;
    double distance = 0; // km
    Minutes duration = 0;
    Mass load;
    double load_factor = 0;
    bool operator==(const VehicleCost &) const = default;
};

struct CostBreakdown {
    std::vector<VehicleCost> per_vehicle;
    double total_transport = 0;
    double total_penalty = 0;
    double total = 0;
    bool feasible = true;
    std::vector<Violation> violations;
    bool operator==(const CostBreakdown &) const = default;
};

// Arrival times along one route under the no-waiting policy: service starts on
// arrival, early or late. Ids must be valid store ids.
RouteTimeline propagate_times(const Instance &instance, const Route &route);

// Driven km of a route including both depot legs; 0 for an empty route.
double route_distance(const Instance &instance, const Route &route);
Mass route_load(const Instance &instance, const Route &route);

double transport_cost(const Instance &instance, const RoutePlan &plan);
double penalty_cost(const Instance &instance, std::span<const RouteTimeline> timelines);
double penalty_cost(const Instance &instance, const RouteTimeline &timeline);

// Validates any plan shape, including ones that break RoutePlan invariants.
std::vector<Violation> check_constraints(const Instance &instance, const RoutePlan &plan);

// Full pricing of a plan. Throws std::invalid_argument when a route
// references an id outside 1..N (nothing can be priced then); missing or
// duplicated stores are reported as violations and still priced.
CostBreakdown evaluate(const Instance &instance, const RoutePlan &plan);

// Sum of capacity overruns (t) and range overruns (km); the quantity the
// big-M weight multiplies.
double violation_magnitude(const CostBreakdown &cost);

// violation_magnitude in millionths (grams, millimetres), rounded, so overruns
// that agree up to summation order compare equal. Used to rank plans.
std::int64_t violation_units(const CostBreakdown &cost);

} // namespace freshroute
