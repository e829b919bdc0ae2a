#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "protolife/arms/run.hpp"
#include "protolife/errors.hpp"
#include "protolife/info/entropy.hpp"
#include "protolife/lambda/term.hpp"
#include "protolife/ode/replicator.hpp"
#include "protolife/org/analyze.hpp"
#include "protolife/reactor/experiment.hpp"

namespace {

using nlohmann::json;
using namespace protolife;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw ConfigError("missing key '" + std::string(key) + "' in " + where);
    return obj.at(key);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeFailure("cannot open output file: " + path);
    return out;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed) {
    const auto config = reactor::load_json_file(config_path);
    const auto summary = reactor::run_experiment(config, seed);
    std::printf("outcome: %s\n", summary.outcome.c_str());
    std::printf("steps: %lld\n", static_cast<long long>(summary.steps_executed));
    std::printf("events: %lld\n", static_cast<long long>(summary.events_emitted));
    std::printf("final population: %lld\n",
                static_cast<long long>(summary.final_population));
    std::printf("species: %lld\n", static_cast<long long>(summary.species_count));
    if (summary.final_entropy_bits.has_value())
        std::printf("final entropy bits: %.17g\n", *summary.final_entropy_bits);
    else
        std::printf("final entropy bits: n/a\n");
    return 0;
}

int cmd_sweep(const std::string& config_path, std::optional<std::uint64_t> seed) {
    const auto config = reactor::load_json_file(config_path);
    check_keys(config, "sweep config",
               {"seed", "grid", "runs_per_point", "run_params", "output"});
    const std::uint64_t master =
        seed.value_or(config.contains("seed")
                          ? config.at("seed").get<std::uint64_t>()
                          : kDefaultSeed);
    std::vector<double> grid;
    for (const auto& v : require(config, "grid", "sweep config")) {
        if (!v.is_number()) throw ConfigError("grid entries must be numbers");
        grid.push_back(v.get<double>());
    }
    if (grid.empty()) throw ConfigError("sweep grid must be nonempty");
    const auto runs = require(config, "runs_per_point", "sweep config").get<int>();

    arms::SweepRunParams params;
    if (config.contains("run_params")) {
        const json& rp = config.at("run_params");
        check_keys(rp, "run_params",
                   {"n_rules", "alphabet_size", "max_side_size", "initial_size",
                    "max_steps", "stochastic_rule_choice"});
        if (rp.contains("n_rules")) params.ruleset.n_rules = rp.at("n_rules").get<int>();
        if (rp.contains("alphabet_size"))
            params.ruleset.alphabet_size = rp.at("alphabet_size").get<int>();
        if (rp.contains("max_side_size"))
            params.ruleset.max_side_size = rp.at("max_side_size").get<int>();
        if (rp.contains("initial_size"))
            params.initial_size = rp.at("initial_size").get<int>();
        if (rp.contains("max_steps"))
            params.max_steps = rp.at("max_steps").get<std::size_t>();
        if (rp.contains("stochastic_rule_choice"))
            params.stochastic_rule_choice = rp.at("stochastic_rule_choice").get<bool>();
    }
    const auto rows = arms::sweep(master, grid, runs, params);
    auto out = open_output(require(config, "output", "sweep config").get<std::string>());
    out << arms::sweep_to_csv(rows);
    if (!out) throw RuntimeFailure("failed writing sweep output");
    std::printf("sweep: %zu grid points, %d runs each\n", grid.size(), runs);
    return 0;
}

int cmd_ode(const std::string& config_path) {
    const auto config = reactor::load_json_file(config_path);
    check_keys(config, "ode config", {"x0", "W", "t_end", "dt", "output"});
    std::vector<double> x0;
    for (const auto& v : require(config, "x0", "ode config"))
        x0.push_back(v.get<double>());
    std::vector<std::vector<double>> w;
    for (const auto& row : require(config, "W", "ode config"))
        w.push_back(row.get<std::vector<double>>());
    const double t_end = require(config, "t_end", "ode config").get<double>();
    const double dt = require(config, "dt", "ode config").get<double>();

    const auto trajectory = ode::integrate(ode::FrequencyVector(x0),
                                           ode::FitnessSpec{std::move(w)}, t_end, dt);

    auto out = open_output(require(config, "output", "ode config").get<std::string>());
    out << 't';
    for (std::size_t i = 0; i < x0.size(); ++i) out << ",x_" << i;
    out << '\n';
    char buf[32];
    for (const auto& [t, x] : trajectory) {
        std::snprintf(buf, sizeof(buf), "%.17g", t);
        out << buf;
        for (const double v : x.values()) {
            std::snprintf(buf, sizeof(buf), ",%.17g", v);
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw RuntimeFailure("failed writing ode output");
    std::printf("ode: %zu samples\n", trajectory.size());
    return 0;
}

struct AnalyzeArgs {
    std::string log_path;
    std::string report_path;
    std::string eq_name = "exact";
    int max_period = 5;
    int max_cycle_len = 8;
    std::size_t max_cycles = 1000;
    bool skip_replicators = false;
    bool use_rotations = false;
    bool use_reflections = false;
    std::vector<std::string> probes;
    int budget_steps = 10000;
    int budget_nodes = 100000;
    std::string timeseries_path;
    std::string entropy_out_path;
};

int cmd_analyze(const AnalyzeArgs& args) {
    const auto log = reactor::parse_event_log_file(args.log_path);

    org::AnalyzeOptions options;
    options.max_period = args.max_period;
    options.hypercycles.max_length = args.max_cycle_len;
    options.hypercycles.max_cycles = args.max_cycles;
    options.skip_replicators = args.skip_replicators;
    if (args.eq_name == "exact") {
        options.equivalence = org::ExactEquivalence{};
    } else if (args.eq_name == "tileshape") {
        options.equivalence = org::TileShapeEquivalence{
            {args.use_rotations, args.use_reflections}};
    } else if (args.eq_name == "functional") {
        org::FunctionalEquivalence eq;
        if (args.probes.empty())
            throw ConfigError("--eq functional requires at least one --probe");
        for (const auto& text : args.probes) eq.probes.push_back(lambda::parse(text));
        eq.budget = lambda::ReductionBudget{args.budget_steps, args.budget_nodes};
        options.equivalence = std::move(eq);
    } else {
        throw ConfigError("unknown equivalence '" + args.eq_name +
                          "' (expected exact, tileshape, or functional)");
    }

    if (!args.timeseries_path.empty()) {
        if (args.entropy_out_path.empty())
            throw ConfigError("--timeseries needs --entropy-out");
        std::ifstream ts(args.timeseries_path);
        if (!ts) throw RuntimeFailure("cannot open time series: " + args.timeseries_path);
        auto out = open_output(args.entropy_out_path);
        info::entropy_series_csv(ts, out);
        if (!out) throw RuntimeFailure("failed writing entropy series");
        options.entropy_series_file = args.entropy_out_path;
    } else if (!args.entropy_out_path.empty()) {
        throw ConfigError("--entropy-out needs --timeseries");
    }

    const auto report = org::analyze_log(log, options);
    auto out = open_output(args.report_path);
    out << report.dump(2) << '\n';
    if (!out) throw RuntimeFailure("failed writing report");
    std::printf("analyze: %lld events, %zu replicators, %zu hypercycles\n",
                static_cast<long long>(log.event_count()),
                report.at("replicators").size(), report.at("hypercycles").size());
    return 0;
}

bool is_config_error(const std::exception& e) {
    return dynamic_cast<const ConfigError*>(&e) != nullptr ||
           dynamic_cast<const SyntaxError*>(&e) != nullptr ||
           dynamic_cast<const MalformedLog*>(&e) != nullptr ||
           dynamic_cast<const MissingInstanceIds*>(&e) != nullptr ||
           dynamic_cast<const DegenerateRuleset*>(&e) != nullptr ||
           dynamic_cast<const InvalidDistribution*>(&e) != nullptr ||
           dynamic_cast<const DimensionMismatch*>(&e) != nullptr ||
           dynamic_cast<const ArityError*>(&e) != nullptr ||
           dynamic_cast<const UnknownSpecies*>(&e) != nullptr ||
           dynamic_cast<const EmptyPopulation*>(&e) != nullptr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"protolife: artificial chemistry reactor, sweeps, replicator "
                 "dynamics, and event-log analysis"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::uint64_t seed_value = 0;

    auto* run = app.add_subcommand("run", "execute a reactor experiment");
    run->add_option("config", config_path, "JSON experiment config")->required();
    auto* run_seed = run->add_option("--seed", seed_value, "override the config seed");

    auto* sweep = app.add_subcommand("sweep", "order-parameter sweep over random rulesets");
    sweep->add_option("config", config_path, "JSON sweep config")->required();
    auto* sweep_seed = sweep->add_option("--seed", seed_value, "override the config seed");

    auto* ode = app.add_subcommand("ode", "integrate replicator dynamics");
    ode->add_option("config", config_path, "JSON ode config")->required();

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "post-hoc event-log analysis");
    analyze->add_option("log", analyze_args.log_path, "JSONL event log")->required();
    analyze->add_option("--report", analyze_args.report_path, "output report path")
        ->required();
    analyze->add_option("--eq", analyze_args.eq_name,
                        "equivalence: exact|tileshape|functional");
    analyze->add_option("--max-period", analyze_args.max_period,
                        "replication period cap");
    analyze->add_option("--max-cycle-len", analyze_args.max_cycle_len,
                        "hypercycle length cap");
    analyze->add_option("--max-cycles", analyze_args.max_cycles,
                        "hypercycle count cap");
    analyze->add_flag("--skip-replicators", analyze_args.skip_replicators,
                      "network analysis only (for untracked logs)");
    analyze->add_flag("--use-rotations", analyze_args.use_rotations,
                      "tileshape: compare up to rotations");
    analyze->add_flag("--use-reflections", analyze_args.use_reflections,
                      "tileshape: compare up to reflections");
    analyze->add_option("--probe", analyze_args.probes,
                        "functional: probe term (repeatable)");
    analyze->add_option("--budget-steps", analyze_args.budget_steps,
                        "functional: reduction step budget");
    analyze->add_option("--budget-nodes", analyze_args.budget_nodes,
                        "functional: reduction node budget");
    analyze->add_option("--timeseries", analyze_args.timeseries_path,
                        "reactor time-series CSV to convert");
    analyze->add_option("--entropy-out", analyze_args.entropy_out_path,
                        "entropy series CSV output path");

    CLI11_PARSE(app, argc, argv);
    if (run_seed->count() > 0 || sweep_seed->count() > 0) seed = seed_value;

    try {
        if (run->parsed()) return cmd_run(config_path, seed);
        if (sweep->parsed()) return cmd_sweep(config_path, seed);
        if (ode->parsed()) return cmd_ode(config_path);
        return cmd_analyze(analyze_args);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return is_config_error(e) ? kExitConfig : kExitRuntime;
    }
}
