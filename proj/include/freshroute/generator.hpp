#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freshroute/model.hpp"

namespace freshroute {

struct GeneratorParams {
    std::size_t store_count = 7;
    int vehicle_count = 2;
    std::uint64_t seed = 1;
    // 0 = windows 8 h wide, approaching 1 = 30 min wide.
    double window_tightness = 0.5;
    double area_km = 30;
    double capacity_tons = 2;
    double speed = 60;
    // 0 picks 4 x area.
    double max_route_distance = 0;
};

std::vector<std::string> validate_params(const GeneratorParams &params);

// Random instance: nodes uniform in [0, area]^2, Euclidean distances rounded to
// 0.1 km, demands uniform in [0.1 t, Q/2] at kg resolution, handling time 60
// min per ton, and per store an acceptable window that contains the direct
// arrival time from the depot. Throws std::invalid_argument for bad params.
Instance generate_instance(const GeneratorParams &params);

} // namespace freshroute
