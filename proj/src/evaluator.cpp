#include "freshroute/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace freshroute {

const char *to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::MissingStore:
        return "missing-store";
    case ViolationKind::DuplicateStore:
        return "duplicate-store";
    case ViolationKind::UnknownStore:
        return "unknown-store";
    case ViolationKind::VehicleCount:
        return "vehicle-count";
    case ViolationKind::Capacity:
        return "capacity";
    case ViolationKind::Range:
        return "range";
    }
    return "unknown";
}

std::string Violation::describe() const {
    switch (kind) {
    case ViolationKind::MissingStore:
        return fmt::format("store {} is not visited by any vehicle (each store must be served exactly once)", store);
    case ViolationKind::DuplicateStore:
        return fmt::format("store {} is visited {} times (each store must be served exactly once)", store,
                           static_cast<int>(amount));
    case ViolationKind::UnknownStore:
        return fmt::format("vehicle {} references unknown store {}", vehicle.value_or(0) + 1, store);
    case ViolationKind::VehicleCount:
        return fmt::format("plan has {} routes for the fleet size", static_cast<int>(amount));
    case ViolationKind::Capacity:
        return fmt::format("vehicle {} overloaded by {:.3f} t", vehicle.value_or(0) + 1, amount);
    case ViolationKind::Range:
        return fmt::format("vehicle {} exceeds max route distance by {:.3f} km", vehicle.value_or(0) + 1, amount);
    }
    return "unknown violation";
}

RouteTimeline propagate_times(const Instance &instance, const Route &route) {
    RouteTimeline timeline;
    timeline.stops.reserve(route.size());
    Minutes clock = instance.depot_open;
    int previous = 0;
    for (const int id : route) {
        const Store &store = instance.store(id);
        StopTiming stop;
        stop.store_id = id;
        stop.arrival = clock + travel_time(instance, previous, id);
        stop.service_start = stop.arrival;
        stop.departure = stop.service_start + store.handling_time;
        stop.early_by = std::max(static_cast<Minutes>(store.accept.earliest) - stop.arrival, 0.0);
        stop.late_by = std::max(stop.arrival - static_cast<Minutes>(store.accept.latest), 0.0);
        timeline.stops.push_back(stop);
        clock = stop.departure;
        previous = id;
    }
    timeline.return_time = route.empty() ? clock : clock + travel_time(instance, previous, 0);
    return timeline;
}

double route_distance(const Instance &instance, const Route &route) {
    if (route.empty()) {
        return 0.0;
    }
    const auto &d = instance.distances;
    double km = 0.0;
    std::size_t previous = 0;
    for (const int id : route) {
        km += d.at(previous, static_cast<std::size_t>(id));
        previous = static_cast<std::size_t>(id);
    }
    km += d.at(previous, 0);
    return km;
}

Mass route_load(const Instance &instance, const Route &route) {
    Mass load;
    for (const int id : route) {
        load += instance.store(id).demand;
    }
    return load;
}

double transport_cost(const Instance &instance, const RoutePlan &plan) {
    double cost = 0.0;
    for (const auto &route : plan.routes) {
        cost += instance.coeffs.per_km * route_distance(instance, route);
    }
    return cost;
}

double penalty_cost(const Instance &instance, const RouteTimeline &timeline) {
    double cost = 0.0;
    for (const auto &stop : timeline.stops) {
        cost += instance.coeffs.early_penalty * stop.early_by + instance.coeffs.late_penalty * stop.late_by;
    }
    return cost;
}

double penalty_cost(const Instance &instance, std::span<const RouteTimeline> timelines) {
    double cost = 0.0;
    for (const auto &timeline : timelines) {
        cost += penalty_cost(instance, timeline);
    }
    return cost;
}

std::vector<Violation> check_constraints(const Instance &instance, const RoutePlan &plan) {
    std::vector<Violation> out;
    const std::size_t n = instance.store_count();

    if (plan.routes.size() != static_cast<std::size_t>(instance.fleet.vehicle_count)) {
        out.push_back({ViolationKind::VehicleCount, std::nullopt, 0, static_cast<double>(plan.routes.size())});
    }

    std::vector<int> visits(n + 1, 0);
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        bool priceable = true;
        for (const int id : plan.routes[k]) {
            if (!instance.has_store(id)) {
                out.push_back({ViolationKind::UnknownStore, k, id, 1});
                priceable = false;
            } else {
                ++visits[static_cast<std::size_t>(id)];
            }
        }
        if (!priceable) {
            continue;
        }
        const Mass load = route_load(instance, plan.routes[k]);
        if (load > instance.fleet.capacity) {
            out.push_back({ViolationKind::Capacity, k, 0, (load - instance.fleet.capacity).tons()});
        }
        const double km = route_distance(instance, plan.routes[k]);
        if (km > instance.fleet.max_route_distance) {
            out.push_back({ViolationKind::Range, k, 0, km - instance.fleet.max_route_distance});
        }
    }

    for (std::size_t id = 1; id <= n; ++id) {
        if (visits[id] == 0) {
            out.push_back({ViolationKind::MissingStore, std::nullopt, static_cast<int>(id), 0});
        } else if (visits[id] > 1) {
            out.push_back({ViolationKind::DuplicateStore, std::nullopt, static_cast<int>(id),
                           static_cast<double>(visits[id])});
        }
    }
    return out;
}

CostBreakdown evaluate(const Instance &instance, const RoutePlan &plan) {
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        for (const int id : plan.routes[k]) {
            if (!instance.has_store(id)) {
                throw std::invalid_argument(fmt::format("vehicle {} references unknown store {}", k + 1, id));
            }
        }
    }

    CostBreakdown out;
    out.per_vehicle.reserve(plan.routes.size());
    const double capacity_kg = static_cast<double>(instance.fleet.capacity.kg());
    for (const auto &route : plan.routes) {
        const RouteTimeline timeline = propagate_times(instance, route);
        VehicleCost v;
        v.distance = route_distance(instance, route);
        v.transport_cost = instance.coeffs.per_km * v.distance;
        v.penalty_cost = penalty_cost(instance, timeline);
        v.duration = timeline.return_time - static_cast<Minutes>(instance.depot_open);
        v.load = route_load(instance, route);
        v.load_factor = static_cast<double>(v.load.kg()) / capacity_kg;
        out.per_vehicle.push_back(v);
    }
    for (const auto &v : out.per_vehicle) {
        out.total_transport += v.transport_cost;
        out.total_penalty += v.penalty_cost;
    }
    out.total = out.total_transport + out.total_penalty;
    out.violations = check_constraints(instance, plan);
    out.feasible = out.violations.empty();
    return out;
}

double violation_magnitude(const CostBreakdown &cost) {
    double sum = 0.0;
    for (const auto &v : cost.violations) {
        if (!v.structural()) {
            sum += v.amount;
        }
    }
    return sum;
}

std::int64_t violation_units(const CostBreakdown &cost) { return std::llround(violation_magnitude(cost) * 1e6); }

} // namespace freshroute
