#include "freshroute/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace freshroute {

InstanceError::InstanceError(std::vector<std::string> problems)
    : std::runtime_error(fmt::format("instance rejected:\n  {}", fmt::join(problems, "\n  "))),
      problems_(std::move(problems)) {}

Mass Mass::from_tons(double tons) {
    return Mass(static_cast<std::int64_t>(std::llround(tons * 1000.0)));
}

std::string format_clock(ClockMinutes minutes) {
    return fmt::format("{:02d}:{:02d}", minutes / 60, minutes % 60);
}

std::optional<ClockMinutes> parse_clock(const std::string &text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon > 2 || text.size() != colon + 3) {
        return std::nullopt;
    }
    int hours = 0;
    int minutes = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (i == colon) {
            continue;
        }
        if (text[i] < '0' || text[i] > '9') {
            return std::nullopt;
        }
        int &field = i < colon ? hours : minutes;
        field = field * 10 + (text[i] - '0');
    }
    if (hours > 23 || minutes > 59) {
        return std::nullopt;
    }
    return hours * 60 + minutes;
}

double DistanceMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) {
        throw std::out_of_range(fmt::format("node pair ({}, {}) outside matrix of dimension {}", i, j, dim_));
    }
    return (*this)(i, j);
}

RoutePlan canonicalize(RoutePlan plan) {
    std::stable_sort(plan.routes.begin(), plan.routes.end(), [](const Route &a, const Route &b) {
        if (a.empty() || b.empty()) {
            return !a.empty() && b.empty();
        }
        return a < b;
    });
    return plan;
}

Minutes travel_time(const Instance &instance, int from, int to) {
    if (from < 0 || to < 0) {
        throw std::out_of_range(fmt::format("negative node id in travel_time({}, {})", from, to));
    }
    const double km = instance.distances.at(static_cast<std::size_t>(from), static_cast<std::size_t>(to));
    return km / instance.fleet.speed * 60.0;
}

double feasible_cost_bound(const Instance &instance) {
    const auto &c = instance.coeffs;
    const auto &f = instance.fleet;
    return c.per_km * f.vehicle_count * f.max_route_distance +
           c.late_penalty * 24.0 * 60.0 * static_cast<double>(instance.store_count());
}

Mass total_demand(const Instance &instance) {
    Mass sum;
    for (const auto &s : instance.stores) {
        sum += s.demand;
    }
    return sum;
}

std::vector<std::string> validate_instance(const Instance &instance) {
    std::vector<std::string> out;
    const auto &fleet = instance.fleet;
    const auto &coeffs = instance.coeffs;

    if (fleet.vehicle_count < 1) {
        out.push_back(fmt::format("fleet: vehicle count {} must be at least 1", fleet.vehicle_count));
    }
    if (fleet.capacity <= Mass{}) {
        out.push_back(fmt::format("fleet: capacity {} t must be positive", fleet.capacity.tons()));
    }
    if (!(fleet.max_route_distance > 0)) {
        out.push_back(fmt::format("fleet: max route distance {} km must be positive", fleet.max_route_distance));
    }
    if (!(fleet.speed > 0)) {
        out.push_back(fmt::format("fleet: speed {} km/h must be positive", fleet.speed));
    }

    if (!(coeffs.per_km >= 0)) {
        out.push_back(fmt::format("coeffs: per_km {} must be non-negative", coeffs.per_km));
    }
    if (!(coeffs.early_penalty >= 0)) {
        out.push_back(fmt::format("coeffs: early_penalty {} must be non-negative", coeffs.early_penalty));
    }
    if (!(coeffs.late_penalty >= 0)) {
        out.push_back(fmt::format("coeffs: late_penalty {} must be non-negative", coeffs.late_penalty));
    }
    const double bound = feasible_cost_bound(instance);
    if (!(coeffs.infeasibility_weight > bound)) {
        out.push_back(fmt::format("coeffs: infeasibility_weight {} must exceed the feasible cost bound {}",
                                  coeffs.infeasibility_weight, bound));
    }

    if (instance.depot_open < 0 || instance.depot_open >= 24 * 60) {
        out.push_back(fmt::format("meta: depot_open {} outside 00:00..23:59", instance.depot_open));
    }

    for (std::size_t i = 0; i < instance.stores.size(); ++i) {
        const Store &s = instance.stores[i];
        const int expected_id = static_cast<int>(i) + 1;
        if (s.id != expected_id) {
            out.push_back(fmt::format("store #{}: id {} out of sequence (expected {})", i + 1, s.id, expected_id));
        }
        if (s.demand <= Mass{}) {
            out.push_back(fmt::format("store {}: demand {} t must be positive", s.id, s.demand.tons()));
        }
        if (s.demand > fleet.capacity) {
            out.push_back(fmt::format("store {}: demand {} t exceeds vehicle capacity {} t (unservable)", s.id,
                                      s.demand.tons(), fleet.capacity.tons()));
        }
        if (!(s.handling_time >= 0)) {
            out.push_back(fmt::format("store {}: handling time {} must be non-negative", s.id, s.handling_time));
        }
        if (s.accept.earliest >= s.accept.latest) {
            out.push_back(fmt::format("store {}: acceptable window {}-{} is empty or inverted", s.id,
                                      format_clock(s.accept.earliest), format_clock(s.accept.latest)));
        }
        if (s.expected && s.expected->earliest > s.expected->latest) {
            out.push_back(fmt::format("store {}: expected window {}-{} is inverted", s.id,
                                      format_clock(s.expected->earliest), format_clock(s.expected->latest)));
        }
    }

    const std::size_t nodes = instance.stores.size() + 1;
    const auto &d = instance.distances;
    if (d.dimension() != nodes) {
        out.push_back(fmt::format("matrix: dimension {} does not match {} nodes (depot + {} stores)", d.dimension(),
                                  nodes, instance.stores.size()));
    } else {
        for (std::size_t i = 0; i < nodes; ++i) {
            if (d(i, i) != 0.0) {
                out.push_back(fmt::format("matrix: diagonal entry ({}, {}) is {} instead of 0", i, i, d(i, i)));
            }
            for (std::size_t j = 0; j < nodes; ++j) {
                if (!(d(i, j) >= 0.0) || !std::isfinite(d(i, j))) {
                    out.push_back(fmt::format("matrix: entry ({}, {}) = {} is not a finite non-negative distance", i,
                                              j, d(i, j)));
                }
                if (j > i && d(i, j) != d(j, i)) {
                    out.push_back(fmt::format("matrix: asymmetric pair ({}, {}) = {} vs ({}, {}) = {}", i, j, d(i, j),
                                              j, i, d(j, i)));
                }
            }
        }
    }

    if (instance.coords && instance.coords->size() != nodes) {
        out.push_back(fmt::format("coords: {} points for {} nodes", instance.coords->size(), nodes));
    }
    return out;
}

} // namespace freshroute
