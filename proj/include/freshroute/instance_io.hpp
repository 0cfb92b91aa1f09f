#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "freshroute/model.hpp"

namespace freshroute {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string &message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Instance file grammar (line oriented, '#' starts a comment line):
//
//   META     name <text> | currency <text> | depot_open HH:MM
//   FLEET    vehicles <int> | capacity <t> | max_distance <km> | speed <km/h>
//   COEFFS   per_km <x> | early_penalty <x> | late_penalty <x> | infeasibility_weight <x>
//   STORES   <id> <demand t> <handling min> <E HH:MM> <L HH:MM> [<exp E HH:MM> <exp L HH:MM>]
//   MATRIX   N+1 rows, full (N+1 values each) or lower triangular (row i has i+1 values)
//   COORDS   optional, N+1 rows of "<x> <y>", depot first
//
// Throws ParseError on grammar problems and InstanceError when the parsed
// instance fails validation.
Instance parse_instance(std::string_view text);

// Canonical form: fixed section order, full matrix, shortest round-trip numbers.
std::string emit_instance(const Instance &instance);

// Plan file: one line per vehicle, "<vehicle 1..K> <store id>...". Vehicles
// without a line get an empty route. Throws ParseError for malformed lines,
// vehicle indices outside 1..K, repeated vehicles and unknown store ids.
RoutePlan parse_plan(std::string_view text, const Instance &instance);
std::string emit_plan(const RoutePlan &plan, std::string_view comment = {});

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

} // namespace freshroute
