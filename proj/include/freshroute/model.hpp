#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace freshroute {

// Mass held as whole kilograms so load sums and load factors are exact.
class Mass {
public:
    constexpr Mass() = default;
    static constexpr Mass from_kg(std::int64_t kg) { return Mass(kg); }
    // Rounds to the nearest kilogram.
    static Mass from_tons(double tons);

    constexpr std::int64_t kg() const { return kg_; }
    constexpr double tons() const { return static_cast<double>(kg_) / 1000.0; }

    constexpr Mass &operator+=(Mass other) {
        kg_ += other.kg_;
        return *this;
    }
    friend constexpr Mass operator+(Mass a, Mass b) { return Mass(a.kg_ + b.kg_); }
    friend constexpr Mass operator-(Mass a, Mass b) { return Mass(a.kg_ - b.kg_); }
    friend constexpr auto operator<=>(Mass, Mass) = default;

private:
    constexpr explicit Mass(std::int64_t kg) : kg_(kg) {}
    std::int64_t kg_ = 0;
};

// Whole minutes since midnight.
using ClockMinutes = int;
// Computed instants and durations; fractional because transit times are.
using Minutes = double;

std::string format_clock(ClockMinutes minutes);
// Accepts H:MM or HH:MM within 00:00..23:59.
std::optional<ClockMinutes> parse_clock(const std::string &text);

struct TimeWindow {
    ClockMinutes earliest = 0;
    ClockMinutes latest = 0;

    bool contains(Minutes t) const { return t >= earliest && t <= latest; }
    bool operator==(const TimeWindow &) const = default;
};

struct Store {
    int id = 0;
    Mass demand;
    Minutes handling_time = 0;
    // Acceptable window [E_i, L_i]; this is what penalties are priced against.
    TimeWindow accept;
    // Preferred window, informational only.
    std::optional<TimeWindow> expected;

    bool operator==(const Store &) const = default;
};

struct Fleet {
    int vehicle_count = 1;
    Mass capacity;
    double max_route_distance = 0; // km
    double speed = 0;              // km/h

    bool operator==(const Fleet &) const = default;
};

struct CostCoefficients {
    double per_km = 0;
    double early_penalty = 0; // per minute early
    double late_penalty = 0;  // per minute late
    double infeasibility_weight = 0;

    bool operator==(const CostCoefficients &) const = default;
};

class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t dimension)
        : dim_(dimension), km_(dimension * dimension, 0.0) {}

    std::size_t dimension() const { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return km_[i * dim_ + j]; }
    double &operator()(std::size_t i, std::size_t j) { return km_[i * dim_ + j]; }
    // Bounds-checked access; throws std::out_of_range.
    double at(std::size_t i, std::size_t j) const;

    bool operator==(const DistanceMatrix &) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> km_;
};

struct Point {
    double x = 0;
    double y = 0;
    bool operator==(const Point &) const = default;
};

struct Instance {
    std::string name = "unnamed";
    std::string currency = "CNY";
    ClockMinutes depot_open = 6 * 60;
    Fleet fleet;
    CostCoefficients coeffs;
    // stores[i - 1] has id i.
    std::vector<Store> stores;
    // Node 0 is the depot, node i is store i.
    DistanceMatrix distances;
    // One point per node, used for plotting only.
    std::optional<std::vector<Point>> coords;

    std::size_t store_count() const { return stores.size(); }
    const Store &store(int id) const { return stores.at(static_cast<std::size_t>(id - 1)); }
    bool has_store(int id) const { return id >= 1 && static_cast<std::size_t>(id) <= stores.size(); }

    bool operator==(const Instance &) const = default;
};

using Route = std::vector<int>;

// routes[k] is the ordered store sequence of vehicle k; depot legs are implicit.
struct RoutePlan {
    std::vector<Route> routes;
    bool operator==(const RoutePlan &) const = default;
    auto operator<=>(const RoutePlan &) const = default;
};

// Identical vehicles make route order irrelevant: non-empty routes sorted by
// their first store, empty routes last.
RoutePlan canonicalize(RoutePlan plan);

// Transit time in minutes between two nodes at the fleet's constant speed.
// Throws std::out_of_range for node ids outside 0..N.
Minutes travel_time(const Instance &instance, int from, int to);

// Every broken instance invariant, one human-readable line each.
std::vector<std::string> validate_instance(const Instance &instance);

// Raised when an instance fails validation; carries every finding.
class InstanceError : public std::runtime_error {
public:
    explicit InstanceError(std::vector<std::string> problems);
    const std::vector<std::string> &problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

// Lower bound the big-M weight has to exceed on this instance.
double feasible_cost_bound(const Instance &instance);

Mass total_demand(const Instance &instance);

} // namespace freshroute
