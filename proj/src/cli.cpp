#include "freshroute/cli.hpp"

#include <algorithm>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "freshroute/evaluator.hpp"
#include "freshroute/ga.hpp"
#include "freshroute/generator.hpp"
#include "freshroute/instance_io.hpp"
#include "freshroute/oracle.hpp"
#include "freshroute/report.hpp"

namespace freshroute::cli {

namespace {

enum class Format { Text, Csv };

struct CliConfig {
    std::string instance_path;
    std::string plan_path;
    std::string plan_b_path;
    std::string label_a = "A";
    std::string label_b = "B";

    GaConfig ga;
    std::size_t restarts = 1;
    std::uint64_t oracle_limit = default_enumeration_limit;
    GeneratorParams gen;

    std::string plan_out;
    std::string trace_out;
    std::string convergence_out;
    std::string report_out;
    std::string svg_out;
    std::string stops_out;
    std::string csv_out;
    std::string output;

    Format format = Format::Text;
    bool verbose = false;
};

// Input problems that end the command with exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Instance load_instance(const std::string &path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception &e) {
        throw InputError(e.what());
    }
    try {
        return parse_instance(text);
    } catch (const ParseError &e) {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    } catch (const InstanceError &e) {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    }
}

RoutePlan load_plan(const std::string &path, const Instance &instance) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception &e) {
        throw InputError(e.what());
    }
    try {
        return parse_plan(text, instance);
    } catch (const ParseError &e) {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    }
}

void write_artifact(const std::string &path, std::string_view content) {
    if (path.empty()) {
        return;
    }
    try {
        write_file(path, content);
    } catch (const std::exception &e) {
        throw InputError(e.what());
    }
}

// Missing, duplicated or unknown stores make a plan unusable, not merely infeasible.
bool report_structural(const CostBreakdown &cost, std::ostream &err) {
    bool any = false;
    for (const auto &v : cost.violations) {
        if (v.structural()) {
            err << "error: " << v.describe() << '\n';
            any = true;
        }
    }
    return any;
}

void write_geometry(const CliConfig &cfg, const Instance &instance, const RoutePlan &plan, std::ostream &err) {
    if (cfg.svg_out.empty() && cfg.stops_out.empty()) {
        return;
    }
    const auto geometry = export_route_geometry(instance, plan, plan_timelines(instance, plan));
    write_artifact(cfg.stops_out, geometry.stops_csv);
    if (!cfg.svg_out.empty()) {
        if (geometry.svg) {
            write_artifact(cfg.svg_out, *geometry.svg);
        } else {
            err << "warning: instance has no COORDS section; route drawing skipped\n";
        }
    }
}

std::string solve_summary(const Instance &instance, const GaConfig &ga, std::size_t restarts,
                          const SolveReport &report) {
    const auto &c = report.best_cost;
    std::string out;
    out += fmt::format("instance: {} ({} stores, {} vehicles)\n", instance.name, instance.store_count(),
                       instance.fleet.vehicle_count);
    out += fmt::format("ga: population {} pc {} pm {} inversion {} elitism {} max generations {} stall {}\n",
                       ga.population_size, format_number(ga.crossover_rate), format_number(ga.mutation_rate),
                       format_number(ga.inversion_rate), ga.elitism_count, ga.max_generations, ga.stall_generations);
    out += fmt::format("seed: {} (best of {} restart{})\n", ga.rng_seed, restarts, restarts == 1 ? "" : "s");
    out += fmt::format("generations run: {}, best found at generation {}\n", report.generations_run,
                       report.converged_at);
    out += fmt::format("best chromosome: {}\n", to_string(encode(report.best_plan)));
    out += fmt::format("total cost: {:.1f} {} (transport {:.1f}, penalty {:.1f})\n", c.total, instance.currency,
                       c.total_transport, c.total_penalty);
    out += fmt::format("feasible: {}\n", c.feasible ? "yes" : "no");
    return out;
}

int cmd_solve(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    const Instance instance = load_instance(cfg.instance_path);
    if (auto problems = validate_config(cfg.ga); !problems.empty()) {
        throw InputError(fmt::format("bad GA settings: {}", fmt::join(problems, "; ")));
    }

    // Restart r uses seed + r; runs are independent, the winner is picked by
    // (violation, cost, restart index) so threading cannot change the result.
    std::vector<SolveReport> runs(std::max<std::size_t>(cfg.restarts, 1));
    std::vector<GaConfig> configs(runs.size(), cfg.ga);
    for (std::size_t r = 0; r < runs.size(); ++r) {
        configs[r].rng_seed = cfg.ga.rng_seed + r;
    }
    if (runs.size() == 1) {
        runs[0] = solve(instance, configs[0]);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(runs.size());
        for (std::size_t r = 0; r < runs.size(); ++r) {
            workers.emplace_back([&, r] { runs[r] = solve(instance, configs[r]); });
        }
        for (auto &w : workers) {
            w.join();
        }
    }
    std::size_t winner = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        const auto vr = violation_units(runs[r].best_cost);
        const auto vw = violation_units(runs[winner].best_cost);
        if (vr < vw || (vr == vw && runs[r].best_cost.total < runs[winner].best_cost.total)) {
            winner = r;
        }
    }
    const SolveReport &report = runs[winner];

    if (cfg.verbose) {
        for (const auto &t : report.trace) {
            err << fmt::format("gen {:>4}  best {:.4f}{}\n", t.generation, t.best_cost,
                               t.best_feasible ? "" : " (infeasible)");
        }
    }

    const Rendered table = render_breakdown(instance, report.best_plan, report.best_cost);
    const std::string summary = solve_summary(instance, configs[winner], runs.size(), report);
    if (cfg.format == Format::Csv) {
        out << table.csv;
    } else {
        out << summary << '\n' << table.text;
    }

    write_artifact(cfg.plan_out,
                   emit_plan(report.best_plan, fmt::format("best plan for {}, seed {}, total {}", instance.name,
                                                           configs[winner].rng_seed,
                                                           format_number(report.best_cost.total))));
    write_artifact(cfg.trace_out, trace_csv(report.trace));
    write_artifact(cfg.convergence_out, convergence_csv(report.trace));
    write_artifact(cfg.report_out, summary + "\n" + table.text + "\n" + table.csv);
    write_geometry(cfg, instance, report.best_plan, err);
    return report.best_cost.feasible ? exit_ok : exit_infeasible;
}

int cmd_evaluate(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    const Instance instance = load_instance(cfg.instance_path);
    const RoutePlan plan = load_plan(cfg.plan_path, instance);
    const CostBreakdown cost = evaluate(instance, plan);
    const Rendered table = render_breakdown(instance, plan, cost);
    out << (cfg.format == Format::Csv ? table.csv : table.text);
    write_artifact(cfg.csv_out, table.csv);
    if (report_structural(cost, err)) {
        return exit_input_error;
    }
    write_geometry(cfg, instance, plan, err);
    return cost.feasible ? exit_ok : exit_infeasible;
}

int cmd_compare(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    const Instance instance = load_instance(cfg.instance_path);
    const RoutePlan a = load_plan(cfg.plan_path, instance);
    const RoutePlan b = load_plan(cfg.plan_b_path, instance);
    const bool broken_a = report_structural(evaluate(instance, a), err);
    const bool broken_b = report_structural(evaluate(instance, b), err);
    if (broken_a || broken_b) {
        return exit_input_error;
    }
    const Rendered table = render_comparison(instance, a, b, cfg.label_a, cfg.label_b);
    out << (cfg.format == Format::Csv ? table.csv : table.text);
    write_artifact(cfg.csv_out, table.csv);
    return exit_ok;
}

int cmd_oracle(const CliConfig &cfg, std::ostream &out, std::ostream &) {
    const Instance instance = load_instance(cfg.instance_path);
    OracleResult result;
    try {
        result = enumerate_optimum(instance, cfg.oracle_limit);
    } catch (const EnumerationTooLarge &e) {
        throw InputError(e.what());
    }
    const auto &c = result.optimum_cost;
    const Rendered table = render_breakdown(instance, result.optimum_plan, c);
    if (cfg.format == Format::Csv) {
        out << table.csv;
    } else {
        out << fmt::format("instance: {} ({} stores, {} vehicles)\n", instance.name, instance.store_count(),
                           instance.fleet.vehicle_count);
        out << fmt::format("plans enumerated: {}\n", result.plans_enumerated);
        out << fmt::format("optimum: {}\n", to_string(encode(result.optimum_plan)));
        out << fmt::format("total cost: {:.1f} {} (transport {:.1f}, penalty {:.1f}; exact {})\n", c.total,
                           instance.currency, c.total_transport, c.total_penalty, format_number(c.total));
        out << fmt::format("feasible: {}\n\n", result.optimum_is_feasible ? "yes" : "no");
        out << table.text;
    }
    write_artifact(cfg.plan_out, emit_plan(result.optimum_plan,
                                           fmt::format("exact optimum for {}, {} plans enumerated, total {}",
                                                       instance.name, result.plans_enumerated,
                                                       format_number(c.total))));
    return result.optimum_is_feasible ? exit_ok : exit_infeasible;
}

int cmd_gen(const CliConfig &cfg, std::ostream &out, std::ostream &) {
    Instance instance;
    try {
        instance = generate_instance(cfg.gen);
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
    const std::string text = emit_instance(instance);
    if (cfg.output.empty()) {
        out << text;
    } else {
        write_artifact(cfg.output, text);
    }
    return exit_ok;
}

void add_format(CLI::App &app, CliConfig &cfg) {
    app.add_option("--format", cfg.format, "Output format on stdout")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::Text}, {"csv", Format::Csv}}));
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CliConfig cfg;
    CLI::App app{"Fresh-produce delivery routing: soft time windows, capacity, GA and exact search", "freshroute"};
    app.require_subcommand(1);

    auto *solve_cmd = app.add_subcommand("solve", "Run the genetic algorithm on an instance");
    solve_cmd->add_option("-i,--instance", cfg.instance_path, "Instance file")->required();
    solve_cmd->add_option("--seed", cfg.ga.rng_seed, "RNG seed")->capture_default_str();
    solve_cmd->add_option("--generations", cfg.ga.max_generations, "Maximum generations")->capture_default_str();
    solve_cmd->add_option("--population", cfg.ga.population_size, "Population size")->capture_default_str();
    solve_cmd->add_option("--pc", cfg.ga.crossover_rate, "Crossover rate")->capture_default_str();
    solve_cmd->add_option("--pm", cfg.ga.mutation_rate, "Mutation rate")->capture_default_str();
    solve_cmd->add_option("--inversion", cfg.ga.inversion_rate, "Inversion rate")->capture_default_str();
    solve_cmd->add_option("--stall", cfg.ga.stall_generations, "Stop after this many generations without improvement")
        ->capture_default_str();
    solve_cmd->add_option("--elitism", cfg.ga.elitism_count, "Chromosomes copied unchanged each generation")
        ->capture_default_str();
    solve_cmd->add_option("--restarts", cfg.restarts, "Independent runs with seeds seed..seed+R-1")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    solve_cmd->add_option("--plan-out", cfg.plan_out, "Write the best plan");
    solve_cmd->add_option("--trace-out", cfg.trace_out, "Write the per-generation trace CSV");
    solve_cmd->add_option("--convergence-out", cfg.convergence_out, "Write generation,best_cost CSV");
    solve_cmd->add_option("--report-out", cfg.report_out, "Write the cost summary");
    solve_cmd->add_option("--svg-out", cfg.svg_out, "Draw the best plan (needs COORDS)");
    solve_cmd->add_option("--stops-out", cfg.stops_out, "Write per-stop arrival CSV");
    solve_cmd->add_flag("-v,--verbose", cfg.verbose, "Print the trace to stderr");
    add_format(*solve_cmd, cfg);

    auto *eval_cmd = app.add_subcommand("evaluate", "Price a plan and list its violations");
    eval_cmd->add_option("-i,--instance", cfg.instance_path, "Instance file")->required();
    eval_cmd->add_option("-p,--plan", cfg.plan_path, "Plan file")->required();
    eval_cmd->add_option("--csv-out", cfg.csv_out, "Write the cost table as CSV");
    eval_cmd->add_option("--svg-out", cfg.svg_out, "Draw the plan (needs COORDS)");
    eval_cmd->add_option("--stops-out", cfg.stops_out, "Write per-stop arrival CSV");
    add_format(*eval_cmd, cfg);

    auto *compare_cmd = app.add_subcommand("compare", "Compare two plans side by side");
    compare_cmd->add_option("-i,--instance", cfg.instance_path, "Instance file")->required();
    compare_cmd->add_option("-a,--plan-a", cfg.plan_path, "First plan (e.g. before)")->required();
    compare_cmd->add_option("-b,--plan-b", cfg.plan_b_path, "Second plan (e.g. after)")->required();
    compare_cmd->add_option("--label-a", cfg.label_a, "Label of the first plan")->capture_default_str();
    compare_cmd->add_option("--label-b", cfg.label_b, "Label of the second plan")->capture_default_str();
    compare_cmd->add_option("--csv-out", cfg.csv_out, "Write the comparison as CSV");
    add_format(*compare_cmd, cfg);

    auto *oracle_cmd = app.add_subcommand("oracle", "Exhaustive exact optimum for small instances");
    oracle_cmd->add_option("-i,--instance", cfg.instance_path, "Instance file")->required();
    oracle_cmd->add_option("--limit", cfg.oracle_limit, "Refuse above this many plans")->capture_default_str();
    oracle_cmd->add_option("--plan-out", cfg.plan_out, "Write the optimum plan");
    add_format(*oracle_cmd, cfg);

    auto *gen_cmd = app.add_subcommand("gen", "Generate a random instance");
    gen_cmd->add_option("--stores", cfg.gen.store_count, "Number of stores")->capture_default_str();
    gen_cmd->add_option("--vehicles", cfg.gen.vehicle_count, "Number of vehicles")->capture_default_str();
    gen_cmd->add_option("--seed", cfg.gen.seed, "RNG seed")->capture_default_str();
    gen_cmd->add_option("--tightness", cfg.gen.window_tightness, "Window tightness in [0, 1)")->capture_default_str();
    gen_cmd->add_option("--area", cfg.gen.area_km, "Side of the square area in km")->capture_default_str();
    gen_cmd->add_option("--capacity", cfg.gen.capacity_tons, "Vehicle capacity in tons")->capture_default_str();
    gen_cmd->add_option("--speed", cfg.gen.speed, "Speed in km/h")->capture_default_str();
    gen_cmd->add_option("--max-distance", cfg.gen.max_route_distance, "Route range in km (0 = 4 x area)")
        ->capture_default_str();
    gen_cmd->add_option("-o,--output", cfg.output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        if (!app.get_subcommands().empty()) {
            err << app.get_subcommands().front()->help();
        } else {
            err << app.help();
        }
        return exit_input_error;
    }

    try {
        if (solve_cmd->parsed()) {
            return cmd_solve(cfg, out, err);
        }
        if (eval_cmd->parsed()) {
            return cmd_evaluate(cfg, out, err);
        }
        if (compare_cmd->parsed()) {
            return cmd_compare(cfg, out, err);
        }
        if (oracle_cmd->parsed()) {
            return cmd_oracle(cfg, out, err);
        }
        return cmd_gen(cfg, out, err);
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
}

} // namespace freshroute::cli
