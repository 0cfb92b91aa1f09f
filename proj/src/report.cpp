#include "freshroute/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "freshroute/instance_io.hpp"

namespace freshroute {

namespace {

std::string stores_text(const Route &route) { return route.empty() ? "-" : fmt::format("{}", fmt::join(route, " ")); }

std::string round1(double value) {
    // Avoid printing "-0.0" for tiny negative deltas.
    const double r = std::round(value * 10.0) / 10.0;
    return fmt::format("{:.1f}", r == 0.0 ? 0.0 : r);
}

std::string whole(double value) {
    const double r = std::round(value);
    return fmt::format("{:.0f}", r == 0.0 ? 0.0 : r);
}

std::string percent(double ratio) {
    const double p = std::round(ratio * 1000.0) / 10.0;
    return p == std::floor(p) ? fmt::format("{:.0f}%", p) : fmt::format("{:.1f}%", p);
}

std::string vehicle_status(const CostBreakdown &cost, std::size_t k) {
    std::vector<std::string> kinds;
    for (const auto &v : cost.violations) {
        if (v.vehicle && *v.vehicle == k) {
            kinds.emplace_back(to_string(v.kind));
        }
    }
    if (kinds.empty()) {
        return "ok";
    }
    return fmt::format("INFEASIBLE({})", fmt::join(kinds, ","));
}

std::string plan_status(const CostBreakdown &cost) {
    if (cost.feasible) {
        return "feasible";
    }
    std::vector<std::string> kinds;
    for (const auto &v : cost.violations) {
        const std::string name = to_string(v.kind);
        if (std::find(kinds.begin(), kinds.end(), name) == kinds.end()) {
            kinds.push_back(name);
        }
    }
    return fmt::format("INFEASIBLE({})", fmt::join(kinds, ","));
}

struct Totals {
    Mass load;
    double transport = 0;
    double penalty = 0;
    double total = 0;
    double duration = 0;
    double distance = 0;
};

Totals totals_of(const CostBreakdown &cost) {
    Totals t;
    for (const auto &v : cost.per_vehicle) {
        t.load += v.load;
        t.duration += v.duration;
        t.distance += v.distance;
    }
    t.transport = cost.total_transport;
    t.penalty = cost.total_penalty;
    t.total = cost.total;
    return t;
}

constexpr std::string_view text_header_format = "{:<8} {:<8} {:<18} {:>7} {:>6} {:>10} {:>9} {:>9} {:>10} {:>11}  {}\n";
constexpr std::string_view csv_header =
    "plan,vehicle,stores,load_t,load_factor,transport,penalty,total,duration_min,mileage_km,status\n";

void append_header(std::string &text) {
    text += fmt::format(text_header_format, "plan", "vehicle", "stores", "load_t", "load", "transport", "penalty",
                        "total", "duration", "mileage_km", "status");
}

void append_plan_rows(std::string &text, std::string &csv, const Instance &instance, std::string_view label,
                      const RoutePlan &plan, const CostBreakdown &cost) {
    for (std::size_t k = 0; k < cost.per_vehicle.size(); ++k) {
        const auto &v = cost.per_vehicle[k];
        const std::string stores = stores_text(plan.routes[k]);
        const double total = v.transport_cost + v.penalty_cost;
        const std::string status = vehicle_status(cost, k);
        text += fmt::format(text_header_format, label, k + 1, stores, round1(v.load.tons()), percent(v.load_factor),
                            round1(v.transport_cost), round1(v.penalty_cost), round1(total),
                            whole(v.duration), round1(v.distance), status);
        csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", label, k + 1, stores, format_number(v.load.tons()),
                           format_number(v.load_factor), format_number(v.transport_cost),
                           format_number(v.penalty_cost), format_number(total), format_number(v.duration),
                           format_number(v.distance), status);
    }
    const Totals t = totals_of(cost);
    const double fleet_kg = static_cast<double>(instance.fleet.capacity.kg()) *
                            static_cast<double>(std::max<std::size_t>(cost.per_vehicle.size(), 1));
    const double utilisation = static_cast<double>(t.load.kg()) / fleet_kg;
    const std::string status = plan_status(cost);
    text += fmt::format(text_header_format, label, "total", "", round1(t.load.tons()), percent(utilisation),
                        round1(t.transport), round1(t.penalty), round1(t.total), whole(t.duration),
                        round1(t.distance), status);
    csv += fmt::format("{},total,,{},{},{},{},{},{},{},{}\n", label, format_number(t.load.tons()),
                       format_number(utilisation), format_number(t.transport), format_number(t.penalty),
                       format_number(t.total), format_number(t.duration), format_number(t.distance), status);
}

} // namespace

Rendered render_breakdown(const Instance &instance, const RoutePlan &plan, const CostBreakdown &cost) {
    Rendered out;
    append_header(out.text);
    out.csv = std::string(csv_header);
    append_plan_rows(out.text, out.csv, instance, "plan", plan, cost);
    out.text += fmt::format("\nfeasible: {}\n", cost.feasible ? "yes" : "no");
    for (const auto &v : cost.violations) {
        out.text += fmt::format("violation [{}]: {}\n", to_string(v.kind), v.describe());
    }
    return out;
}

Rendered render_comparison(const Instance &instance, const RoutePlan &plan_a, const RoutePlan &plan_b,
                           std::string_view label_a, std::string_view label_b) {
    const CostBreakdown cost_a = evaluate(instance, plan_a);
    const CostBreakdown cost_b = evaluate(instance, plan_b);

    Rendered out;
    append_header(out.text);
    out.csv = std::string(csv_header);
    append_plan_rows(out.text, out.csv, instance, label_a, plan_a, cost_a);
    append_plan_rows(out.text, out.csv, instance, label_b, plan_b, cost_b);

    const Totals a = totals_of(cost_a);
    const Totals b = totals_of(cost_b);
    const std::string delta_label = fmt::format("{}-{}", label_b, label_a);
    out.text += fmt::format(text_header_format, "delta", delta_label, "", "", "", round1(b.transport - a.transport),
                            round1(b.penalty - a.penalty), round1(b.total - a.total),
                            whole(b.duration - a.duration), round1(b.distance - a.distance),
                            "");
    out.csv += fmt::format("delta,{},,,,{},{},{},{},{},\n", delta_label, format_number(b.transport - a.transport),
                           format_number(b.penalty - a.penalty), format_number(b.total - a.total),
                           format_number(b.duration - a.duration), format_number(b.distance - a.distance));
    return out;
}

std::vector<RouteTimeline> plan_timelines(const Instance &instance, const RoutePlan &plan) {
    std::vector<RouteTimeline> out;
    out.reserve(plan.routes.size());
    for (const auto &route : plan.routes) {
        out.push_back(propagate_times(instance, route));
    }
    return out;
}

RouteGeometry export_route_geometry(const Instance &instance, const RoutePlan &plan,
                                    const std::vector<RouteTimeline> &timelines) {
    RouteGeometry out;
    out.stops_csv = "vehicle,seq,store,arrival,early_by,late_by,arrival_min\n";
    for (std::size_t k = 0; k < timelines.size(); ++k) {
        for (std::size_t s = 0; s < timelines[k].stops.size(); ++s) {
            const auto &stop = timelines[k].stops[s];
            const auto clock = static_cast<ClockMinutes>(std::lround(stop.arrival));
            out.stops_csv += fmt::format("{},{},{},{},{},{},{}\n", k + 1, s + 1, stop.store_id,
                                         format_clock(((clock % 1440) + 1440) % 1440), format_number(stop.early_by),
                                         format_number(stop.late_by), format_number(stop.arrival));
        }
    }

    if (!instance.coords) {
        return out;
    }
    const auto &pts = *instance.coords;
    double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
    for (const auto &p : pts) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    constexpr double width = 800, height = 600, margin = 50;
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
    const double scale = std::min(width - 2 * margin, height - 2 * margin) / span;
    const auto sx = [&](const Point &p) { return margin + (p.x - min_x) * scale; };
    // SVG y grows downward.
    const auto sy = [&](const Point &p) { return height - margin - (p.y - min_y) * scale; };

    static constexpr std::string_view palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                   "#9467bd", "#8c564b", "#e377c2", "#17becf"};

    std::string svg;
    svg += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
                       "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
                       width, height, width, height);
    svg += fmt::format("<title>{}</title>\n", instance.name);
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        const Route &route = plan.routes[k];
        if (route.empty()) {
            continue;
        }
        const auto colour = palette[k % std::size(palette)];
        std::string points = fmt::format("{:.2f},{:.2f}", sx(pts[0]), sy(pts[0]));
        for (const int id : route) {
            const auto &p = pts[static_cast<std::size_t>(id)];
            points += fmt::format(" {:.2f},{:.2f}", sx(p), sy(p));
        }
        points += fmt::format(" {:.2f},{:.2f}", sx(pts[0]), sy(pts[0]));
        svg += fmt::format("<polyline class=\"route\" data-vehicle=\"{}\" points=\"{}\" fill=\"none\" "
                           "stroke=\"{}\" stroke-width=\"2\"/>\n",
                           k + 1, points, colour);
        const auto &first = pts[static_cast<std::size_t>(route.front())];
        svg += fmt::format("<text class=\"route-label\" x=\"{:.2f}\" y=\"{:.2f}\" fill=\"{}\">Vehicle {}</text>\n",
                           (sx(pts[0]) + sx(first)) / 2, (sy(pts[0]) + sy(first)) / 2 - 6, colour, k + 1);
    }
    svg += fmt::format("<rect class=\"depot\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"12\" height=\"12\" fill=\"black\"/>\n",
                       sx(pts[0]) - 6, sy(pts[0]) - 6);
    svg += fmt::format("<text class=\"node-label\" x=\"{:.2f}\" y=\"{:.2f}\">DC</text>\n", sx(pts[0]) + 8,
                       sy(pts[0]) + 14);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        svg += fmt::format("<circle class=\"store\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"5\" fill=\"white\" "
                           "stroke=\"black\"/>\n",
                           sx(pts[i]), sy(pts[i]));
        svg += fmt::format("<text class=\"node-label\" x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", sx(pts[i]) + 7,
                           sy(pts[i]) - 7, i);
    }
    svg += "</svg>\n";
    out.svg = std::move(svg);
    return out;
}

std::string trace_csv(const std::vector<TraceEntry> &trace) {
    std::string out = "generation,best_fitness,best_penalized,best_cost,best_feasible\n";
    for (const auto &t : trace) {
        out += fmt::format("{},{},{},{},{}\n", t.generation, format_number(t.best_fitness),
                           format_number(t.best_penalized), format_number(t.best_cost), t.best_feasible ? 1 : 0);
    }
    return out;
}

std::string convergence_csv(const std::vector<TraceEntry> &trace) {
    std::string out = "generation,best_cost\n";
    for (const auto &t : trace) {
        out += fmt::format("{},{}\n", t.generation, format_number(t.best_cost));
    }
    return out;
}

} // namespace freshroute
