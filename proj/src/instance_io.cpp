#include "freshroute/instance_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include <fmt/format.h>

namespace freshroute {

namespace {

struct Line {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

std::vector<std::string> split_ws(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.emplace_back(text.substr(start, i - start));
        }
    }
    return out;
}

// Non-blank, non-comment lines with their 1-based numbers.
std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++number;
        auto tokens = split_ws(raw);
        if (!tokens.empty() && tokens.front().front() != '#') {
            out.push_back({number, std::move(tokens)});
        }
        if (nl == std::string_view::npos) {
            break;
        }
        pos = nl + 1;
    }
    return out;
}

double parse_double(const Line &line, const std::string &token, std::string_view what) {
    double value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line.number, fmt::format("'{}' is not a number; expected {}", token, what));
    }
    return value;
}

long long parse_integer(const Line &line, const std::string &token, std::string_view what) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line.number, fmt::format("'{}' is not an integer; expected {}", token, what));
    }
    return value;
}

ClockMinutes parse_time(const Line &line, const std::string &token, std::string_view what) {
    const auto t = parse_clock(token);
    if (!t) {
        throw ParseError(line.number, fmt::format("'{}' is not a 24-hour HH:MM time; expected {}", token, what));
    }
    return *t;
}

constexpr std::string_view stores_grammar =
    "<id> <demand t> <handling min> <accept HH:MM> <accept HH:MM> [<expected HH:MM> <expected HH:MM>]";

const std::array<std::string_view, 6> section_names = {"META", "FLEET", "COEFFS", "STORES", "MATRIX", "COORDS"};

bool is_section(const std::string &token) {
    for (const auto name : section_names) {
        if (token == name) {
            return true;
        }
    }
    return false;
}

class KeyValues {
public:
    KeyValues(std::string section, std::vector<std::string> allowed)
        : section_(std::move(section)), allowed_(std::move(allowed)) {}

    void add(const Line &line) {
        bool known = false;
        for (const auto &k : allowed_) {
            known = known || k == line.tokens[0];
        }
        if (!known) {
            throw ParseError(line.number, fmt::format("unknown key '{}' in {}; expected one of: {}", line.tokens[0],
                                                      section_, fmt::join(allowed_, ", ")));
        }
        if (line.tokens.size() < 2) {
            throw ParseError(line.number, fmt::format("key '{}' has no value; expected '<key> <value>'", line.tokens[0]));
        }
        if (!entries_.emplace(line.tokens[0], line).second) {
            throw ParseError(line.number, fmt::format("key '{}' repeated in {}", line.tokens[0], section_));
        }
    }

    const Line &get(const std::string &key, std::size_t section_line) const {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            throw ParseError(section_line, fmt::format("{} is missing required key '{}'", section_, key));
        }
        return it->second;
    }

    bool has(const std::string &key) const { return entries_.count(key) != 0; }

private:
    std::string section_;
    std::vector<std::string> allowed_;
    std::map<std::string, Line> entries_;
};

std::string rest_of_line(const Line &line) {
    std::string out;
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        if (i > 1) {
            out += ' ';
        }
        out += line.tokens[i];
    }
    return out;
}

const Line &single_value(const Line &line) {
    if (line.tokens.size() != 2) {
        throw ParseError(line.number, fmt::format("key '{}' takes exactly one value", line.tokens[0]));
    }
    return line;
}

} // namespace

ParseError::ParseError(std::size_t line, const std::string &message)
    : std::runtime_error(fmt::format("line {}: {}", line, message)), line_(line) {}

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

Instance parse_instance(std::string_view text) {
    const auto lines = tokenize(text);

    KeyValues meta("META", {"name", "currency", "depot_open"});
    KeyValues fleet("FLEET", {"vehicles", "capacity", "max_distance", "speed"});
    KeyValues coeffs("COEFFS", {"per_km", "early_penalty", "late_penalty", "infeasibility_weight"});
    std::vector<const Line *> store_lines;
    std::vector<const Line *> matrix_lines;
    std::vector<const Line *> coord_lines;
    std::map<std::string, std::size_t> seen_sections;

    std::string current;
    for (const auto &line : lines) {
        const auto &head = line.tokens[0];
        if (is_section(head)) {
            if (line.tokens.size() != 1) {
                throw ParseError(line.number, fmt::format("section header '{}' must stand alone", head));
            }
            if (!seen_sections.emplace(head, line.number).second) {
                throw ParseError(line.number, fmt::format("section {} appears twice", head));
            }
            current = head;
            continue;
        }
        if (current.empty()) {
            throw ParseError(line.number, fmt::format("'{}' outside any section; expected one of: {}", head,
                                                      fmt::join(section_names, ", ")));
        }
        if (current == "META") {
            meta.add(line);
        } else if (current == "FLEET") {
            fleet.add(line);
        } else if (current == "COEFFS") {
            coeffs.add(line);
        } else if (current == "STORES") {
            store_lines.push_back(&line);
        } else if (current == "MATRIX") {
            matrix_lines.push_back(&line);
        } else {
            coord_lines.push_back(&line);
        }
    }

    const std::size_t last_line = lines.empty() ? 1 : lines.back().number;
    for (const auto required : {"META", "FLEET", "COEFFS", "STORES", "MATRIX"}) {
        if (!seen_sections.count(required)) {
            throw ParseError(last_line, fmt::format("missing required section {}", required));
        }
    }

    Instance inst;
    const std::size_t meta_at = seen_sections["META"];
    if (meta.has("name")) {
        inst.name = rest_of_line(meta.get("name", meta_at));
    }
    if (meta.has("currency")) {
        inst.currency = rest_of_line(meta.get("currency", meta_at));
    }
    if (meta.has("depot_open")) {
        const Line &l = single_value(meta.get("depot_open", meta_at));
        inst.depot_open = parse_time(l, l.tokens[1], "depot_open HH:MM");
    }

    const std::size_t fleet_at = seen_sections["FLEET"];
    {
        const Line &l = single_value(fleet.get("vehicles", fleet_at));
        inst.fleet.vehicle_count = static_cast<int>(parse_integer(l, l.tokens[1], "vehicles <int>"));
    }
    {
        const Line &l = single_value(fleet.get("capacity", fleet_at));
        inst.fleet.capacity = Mass::from_tons(parse_double(l, l.tokens[1], "capacity <tons>"));
    }
    {
        const Line &l = single_value(fleet.get("max_distance", fleet_at));
        inst.fleet.max_route_distance = parse_double(l, l.tokens[1], "max_distance <km>");
    }
    {
        const Line &l = single_value(fleet.get("speed", fleet_at));
        inst.fleet.speed = parse_double(l, l.tokens[1], "speed <km/h>");
    }

    const std::size_t coeffs_at = seen_sections["COEFFS"];
    const auto coeff = [&](const char *key) {
        const Line &l = single_value(coeffs.get(key, coeffs_at));
        return parse_double(l, l.tokens[1], fmt::format("{} <number>", key));
    };
    inst.coeffs.per_km = coeff("per_km");
    inst.coeffs.early_penalty = coeff("early_penalty");
    inst.coeffs.late_penalty = coeff("late_penalty");
    inst.coeffs.infeasibility_weight = coeff("infeasibility_weight");

    for (const Line *l : store_lines) {
        const auto &t = l->tokens;
        if (t.size() != 5 && t.size() != 7) {
            throw ParseError(l->number, fmt::format("store line has {} fields; expected {}", t.size(), stores_grammar));
        }
        Store s;
        s.id = static_cast<int>(parse_integer(*l, t[0], stores_grammar));
        s.demand = Mass::from_tons(parse_double(*l, t[1], stores_grammar));
        s.handling_time = parse_double(*l, t[2], stores_grammar);
        s.accept = {parse_time(*l, t[3], stores_grammar), parse_time(*l, t[4], stores_grammar)};
        if (t.size() == 7) {
            s.expected = TimeWindow{parse_time(*l, t[5], stores_grammar), parse_time(*l, t[6], stores_grammar)};
        }
        inst.stores.push_back(s);
    }

    const std::size_t nodes = inst.stores.size() + 1;
    if (matrix_lines.size() != nodes) {
        const std::size_t at = matrix_lines.empty() ? seen_sections["MATRIX"] : matrix_lines.back()->number;
        throw ParseError(at, fmt::format("MATRIX has {} rows; expected {} (depot + {} stores)", matrix_lines.size(),
                                         nodes, inst.stores.size()));
    }
    const bool triangular = nodes > 1 && matrix_lines.front()->tokens.size() == 1;
    inst.distances = DistanceMatrix(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        const Line &l = *matrix_lines[i];
        const std::size_t want = triangular ? i + 1 : nodes;
        if (l.tokens.size() != want) {
            throw ParseError(l.number, fmt::format("matrix row {} has {} values; expected {} ({} matrix)", i,
                                                   l.tokens.size(), want, triangular ? "lower-triangular" : "full"));
        }
        for (std::size_t j = 0; j < want; ++j) {
            const double km = parse_double(l, l.tokens[j], "<km>");
            inst.distances(i, j) = km;
            if (triangular) {
                inst.distances(j, i) = km;
            }
        }
    }

    if (seen_sections.count("COORDS")) {
        if (coord_lines.size() != nodes) {
            throw ParseError(coord_lines.empty() ? seen_sections["COORDS"] : coord_lines.back()->number,
                             fmt::format("COORDS has {} rows; expected {}", coord_lines.size(), nodes));
        }
        std::vector<Point> pts;
        for (const Line *l : coord_lines) {
            if (l->tokens.size() != 2) {
                throw ParseError(l->number, "coordinate row must be '<x> <y>'");
            }
            pts.push_back({parse_double(*l, l->tokens[0], "<x> <y>"), parse_double(*l, l->tokens[1], "<x> <y>")});
        }
        inst.coords = std::move(pts);
    }

    if (auto problems = validate_instance(inst); !problems.empty()) {
        throw InstanceError(std::move(problems));
    }
    return inst;
}

std::string emit_instance(const Instance &inst) {
    std::string out;
    const auto line = [&out](std::string_view text) {
        out += text;
        out += '\n';
    };
    line("META");
    line("name " + inst.name);
    line("currency " + inst.currency);
    line("depot_open " + format_clock(inst.depot_open));
    line("");
    line("FLEET");
    line(fmt::format("vehicles {}", inst.fleet.vehicle_count));
    line("capacity " + format_number(inst.fleet.capacity.tons()));
    line("max_distance " + format_number(inst.fleet.max_route_distance));
    line("speed " + format_number(inst.fleet.speed));
    line("");
    line("COEFFS");
    line("per_km " + format_number(inst.coeffs.per_km));
    line("early_penalty " + format_number(inst.coeffs.early_penalty));
    line("late_penalty " + format_number(inst.coeffs.late_penalty));
    line("infeasibility_weight " + format_number(inst.coeffs.infeasibility_weight));
    line("");
    line("STORES");
    for (const auto &s : inst.stores) {
        std::string row = fmt::format("{} {} {} {} {}", s.id, format_number(s.demand.tons()),
                                      format_number(s.handling_time), format_clock(s.accept.earliest),
                                      format_clock(s.accept.latest));
        if (s.expected) {
            row += fmt::format(" {} {}", format_clock(s.expected->earliest), format_clock(s.expected->latest));
        }
        line(row);
    }
    line("");
    line("MATRIX");
    const std::size_t nodes = inst.distances.dimension();
    for (std::size_t i = 0; i < nodes; ++i) {
        std::string row;
        for (std::size_t j = 0; j < nodes; ++j) {
            if (j > 0) {
                row += ' ';
            }
            row += format_number(inst.distances(i, j));
        }
        line(row);
    }
    if (inst.coords) {
        line("");
        line("COORDS");
        for (const auto &p : *inst.coords) {
            line(format_number(p.x) + " " + format_number(p.y));
        }
    }
    return out;
}

RoutePlan parse_plan(std::string_view text, const Instance &instance) {
    const auto k_count = static_cast<std::size_t>(instance.fleet.vehicle_count);
    RoutePlan plan;
    plan.routes.resize(k_count);
    std::vector<bool> seen(k_count, false);
    constexpr std::string_view grammar = "<vehicle 1..K> <store id>...";

    for (const auto &line : tokenize(text)) {
        const long long vehicle = parse_integer(line, line.tokens[0], grammar);
        if (vehicle < 1 || static_cast<std::size_t>(vehicle) > k_count) {
            throw ParseError(line.number, fmt::format("vehicle {} outside 1..{}", vehicle, k_count));
        }
        const auto k = static_cast<std::size_t>(vehicle - 1);
        if (seen[k]) {
            throw ParseError(line.number, fmt::format("vehicle {} listed twice", vehicle));
        }
        seen[k] = true;
        for (std::size_t i = 1; i < line.tokens.size(); ++i) {
            const long long id = parse_integer(line, line.tokens[i], grammar);
            if (id < 1 || static_cast<std::size_t>(id) > instance.store_count()) {
                throw ParseError(line.number, fmt::format("unknown store {} (instance has stores 1..{})", id,
                                                          instance.store_count()));
            }
            plan.routes[k].push_back(static_cast<int>(id));
        }
    }
    return plan;
}

std::string emit_plan(const RoutePlan &plan, std::string_view comment) {
    std::string out;
    if (!comment.empty()) {
        std::istringstream in{std::string(comment)};
        for (std::string l; std::getline(in, l);) {
            out += "# " + l + "\n";
        }
    }
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        out += std::to_string(k + 1);
        for (const int id : plan.routes[k]) {
            out += ' ' + std::to_string(id);
        }
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open '{}' for reading", path));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw std::runtime_error(fmt::format("failed writing '{}'", path));
    }
}

} // namespace freshroute
