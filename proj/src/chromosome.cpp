#include "freshroute/chromosome.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include <fmt/format.h>

namespace freshroute {

bool is_valid(const Chromosome &c, std::size_t store_count, int vehicle_count) {
    if (vehicle_count < 1 || c.cuts.size() != static_cast<std::size_t>(vehicle_count - 1)) {
        return false;
    }
    if (c.stores.size() != store_count) {
        return false;
    }
    std::vector<bool> seen(store_count + 1, false);
    for (const int id : c.stores) {
        if (id < 1 || static_cast<std::size_t>(id) > store_count || seen[static_cast<std::size_t>(id)]) {
            return false;
        }
        seen[static_cast<std::size_t>(id)] = true;
    }
    std::size_t previous = 0;
    for (const std::size_t cut : c.cuts) {
        if (cut < previous || cut > store_count) {
            return false;
        }
        previous = cut;
    }
    return true;
}

RoutePlan decode(const Chromosome &c) {
    RoutePlan plan;
    plan.routes.reserve(c.segment_count());
    std::size_t begin = 0;
    for (std::size_t k = 0; k <= c.cuts.size(); ++k) {
        const std::size_t end = k < c.cuts.size() ? c.cuts[k] : c.stores.size();
        plan.routes.emplace_back(c.stores.begin() + static_cast<std::ptrdiff_t>(begin),
                                 c.stores.begin() + static_cast<std::ptrdiff_t>(end));
        begin = end;
    }
    return plan;
}

Chromosome encode(const RoutePlan &plan) {
    Chromosome c;
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        if (k > 0) {
            c.cuts.push_back(c.stores.size());
        }
        c.stores.insert(c.stores.end(), plan.routes[k].begin(), plan.routes[k].end());
    }
    return c;
}

std::string to_string(const Chromosome &c) {
    std::string out = "0|";
    const RoutePlan plan = decode(c);
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        if (k > 0) {
            out += '|';
        }
        out += fmt::format("{}", fmt::join(plan.routes[k], " "));
    }
    out += "|0";
    return out;
}

Chromosome from_giant_tour(std::span<const int> tour) {
    if (tour.size() < 2 || tour.front() != 0 || tour.back() != 0) {
        throw std::invalid_argument("giant tour must start and end at the depot (0)");
    }
    RoutePlan plan;
    plan.routes.emplace_back();
    for (std::size_t i = 1; i + 1 < tour.size(); ++i) {
        if (tour[i] == 0) {
            plan.routes.emplace_back();
        } else {
            plan.routes.back().push_back(tour[i]);
        }
    }
    return encode(plan);
}

namespace {

Route parse_segment(std::string_view text) {
    Route route;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (pos == text.size()) {
            break;
        }
        int id = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), id);
        if (ec != std::errc{} || id < 1) {
            throw std::invalid_argument(fmt::format("bad store id in segment '{}'", text));
        }
        route.push_back(id);
        pos = static_cast<std::size_t>(ptr - text.data());
    }
    return route;
}

} // namespace

Chromosome parse_chromosome(std::string_view text) {
    if (text.find('|') == std::string_view::npos) {
        std::vector<int> tour;
        for (const char ch : text) {
            if (!std::isdigit(static_cast<unsigned char>(ch))) {
                throw std::invalid_argument(fmt::format("compact giant tour '{}' must be digits only", text));
            }
            tour.push_back(ch - '0');
        }
        return from_giant_tour(tour);
    }
    if (text.size() < 4 || text.substr(0, 2) != "0|" || text.substr(text.size() - 2) != "|0") {
        throw std::invalid_argument(fmt::format("chromosome '{}' must look like 0|...|0", text));
    }
    const std::string_view body = text.substr(2, text.size() - 4);
    RoutePlan plan;
    std::size_t begin = 0;
    for (;;) {
        const auto bar = body.find('|', begin);
        plan.routes.push_back(parse_segment(body.substr(begin, bar == std::string_view::npos ? bar : bar - begin)));
        if (bar == std::string_view::npos) {
            break;
        }
        begin = bar + 1;
    }
    return encode(plan);
}

} // namespace freshroute
