#include "freshroute/generator.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "freshroute/random.hpp"

namespace freshroute {

namespace {

double effective_range(const GeneratorParams &p) { return p.max_route_distance > 0 ? p.max_route_distance : 4 * p.area_km; }

} // namespace

std::vector<std::string> validate_params(const GeneratorParams &p) {
    std::vector<std::string> out;
    if (p.store_count < 1) {
        out.emplace_back("need at least 1 store");
    }
    if (p.vehicle_count < 1) {
        out.emplace_back("need at least 1 vehicle");
    }
    if (!(p.window_tightness >= 0 && p.window_tightness < 1)) {
        out.push_back(fmt::format("window tightness {} outside [0, 1)", p.window_tightness));
    }
    if (!(p.area_km > 0)) {
        out.push_back(fmt::format("area {} km must be positive", p.area_km));
    }
    if (!(p.capacity_tons >= 0.2)) {
        out.push_back(fmt::format("capacity {} t leaves no room for demands of at least 0.1 t up to Q/2",
                                  p.capacity_tons));
    }
    if (!(p.speed > 0)) {
        out.push_back(fmt::format("speed {} km/h must be positive", p.speed));
    }
    if (p.max_route_distance < 0) {
        out.push_back(fmt::format("max route distance {} km must be positive", p.max_route_distance));
    } else if (p.area_km > 0 && effective_range(p) < 2 * std::sqrt(2.0) * p.area_km) {
        out.push_back(fmt::format("max route distance {} km cannot cover a depot round trip across a {} km area",
                                  effective_range(p), p.area_km));
    }
    // Latest possible direct arrival must still fit in the day.
    if (p.speed > 0 && p.area_km > 0 && 6 * 60 + std::sqrt(2.0) * p.area_km / p.speed * 60 > 23 * 60 + 59) {
        out.emplace_back("area too large for the speed: stores cannot be reached the same day");
    }
    return out;
}

Instance generate_instance(const GeneratorParams &p) {
    if (auto problems = validate_params(p); !problems.empty()) {
        throw std::invalid_argument(fmt::format("bad generator parameters: {}", fmt::join(problems, "; ")));
    }
    Rng rng(p.seed);
    const std::size_t nodes = p.store_count + 1;

    Instance inst;
    inst.name = fmt::format("gen-n{}-k{}-s{}", p.store_count, p.vehicle_count, p.seed);
    inst.depot_open = 6 * 60;
    inst.fleet.vehicle_count = p.vehicle_count;
    inst.fleet.capacity = Mass::from_tons(p.capacity_tons);
    inst.fleet.speed = p.speed;
    inst.fleet.max_route_distance = effective_range(p);
    inst.coeffs.per_km = 1.8;
    inst.coeffs.early_penalty = 0.5;
    inst.coeffs.late_penalty = 1.0;

    std::vector<Point> pts(nodes);
    for (auto &pt : pts) {
        pt.x = std::round(rng.uniform01() * p.area_km * 10) / 10;
        pt.y = std::round(rng.uniform01() * p.area_km * 10) / 10;
    }
    inst.distances = DistanceMatrix(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        for (std::size_t j = i + 1; j < nodes; ++j) {
            const double km = std::round(std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) * 10) / 10;
            inst.distances(i, j) = km;
            inst.distances(j, i) = km;
        }
    }
    inst.coords = pts;

    const std::int64_t min_kg = 100;
    const std::int64_t max_kg = inst.fleet.capacity.kg() / 2;
    const auto width = static_cast<int>(std::lround(30 + (1 - p.window_tightness) * 450));
    for (std::size_t i = 1; i < nodes; ++i) {
        Store s;
        s.id = static_cast<int>(i);
        s.demand = Mass::from_kg(min_kg + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_kg - min_kg + 1))));
        s.handling_time = std::round(60.0 * s.demand.tons());

        const double direct = inst.depot_open + inst.distances(0, i) / p.speed * 60.0;
        const int hi = static_cast<int>(std::floor(direct));
        const int lo = std::max(0, static_cast<int>(std::ceil(direct)) - width);
        const int earliest = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
        const int latest = std::min(earliest + width, 23 * 60 + 59);
        s.accept = {earliest, latest};
        inst.stores.push_back(s);
    }

    inst.coeffs.infeasibility_weight = std::ceil(feasible_cost_bound(inst)) * 1000.0;
    return inst;
}

} // namespace freshroute
