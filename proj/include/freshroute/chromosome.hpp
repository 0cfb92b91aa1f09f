#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freshroute/model.hpp"

namespace freshroute {

// Giant-tour genotype: a permutation of the store ids plus K-1 cut positions
// splitting it into K (possibly empty) vehicle segments.
struct Chromosome {
    std::vector<int> stores;
    // Non-decreasing offsets into `stores`, each in [0, stores.size()].
    std::vector<std::size_t> cuts;

    std::size_t segment_count() const { return cuts.size() + 1; }
    bool operator==(const Chromosome &) const = default;
};

bool is_valid(const Chromosome &c, std::size_t store_count, int vehicle_count);

// Segment k becomes route k, order untouched.
RoutePlan decode(const Chromosome &c);
Chromosome encode(const RoutePlan &plan);

// Depot-delimited rendering, e.g. "0|2 1 4 5|7 8 6 3|0".
std::string to_string(const Chromosome &c);

// Reads the rendering above, or the compact single-digit giant tour
// "02145078630" where every interior 0 separates two vehicles.
// Throws std::invalid_argument on malformed text.
Chromosome parse_chromosome(std::string_view text);

// Tour with 0 as depot marker at both ends and between vehicles.
Chromosome from_giant_tour(std::span<const int> tour);

} // namespace freshroute
