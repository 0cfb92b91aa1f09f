#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freshroute/evaluator.hpp"
#include "freshroute/ga.hpp"
#include "freshroute/model.hpp"

namespace freshroute {

struct Rendered {
    std::string text; // rounded for reading
    std::string csv;  // full precision
};

// Per-vehicle cost table of one plan plus its violations.
Rendered render_breakdown(const Instance &instance, const RoutePlan &plan, const CostBreakdown &cost);

// Side-by-side table of two plans: per-vehicle rows, a totals row per plan and
// a delta row (b - a).
Rendered render_comparison(const Instance &instance, const RoutePlan &plan_a, const RoutePlan &plan_b,
                           std::string_view label_a = "A", std::string_view label_b = "B");

struct RouteGeometry {
    std::optional<std::string> svg; // absent when the instance has no COORDS
    std::string stops_csv;
};

// timelines[k] must be propagate_times of plan.routes[k].
RouteGeometry export_route_geometry(const Instance &instance, const RoutePlan &plan,
                                    const std::vector<RouteTimeline> &timelines);

std::vector<RouteTimeline> plan_timelines(const Instance &instance, const RoutePlan &plan);

// generation,best_fitness,best_penalized,best_cost,best_feasible
std::string trace_csv(const std::vector<TraceEntry> &trace);
// generation,best_cost
std::string convergence_csv(const std::vector<TraceEntry> &trace);

} // namespace freshroute
