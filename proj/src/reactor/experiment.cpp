#include "protolife/reactor/experiment.hpp"

#include <fstream>
#include <set>

#include "protolife/errors.hpp"
#include "protolife/info/entropy.hpp"
#include "protolife/lambda/generate.hpp"
#include "protolife/reactor/chemistry.hpp"
#include "protolife/reactor/reactor.hpp"

namespace protolife::reactor {

using nlohmann::json;

namespace {

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

std::int64_t int_or(const json& obj, const char* key, std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number_integer())
        throw ConfigError("'" + std::string(key) + "' must be an integer");
    return obj.at(key).get<std::int64_t>();
}

double number_or(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number())
        throw ConfigError("'" + std::string(key) + "' must be a number");
    return obj.at(key).get<double>();
}

bool bool_or(const json& obj, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean())
        throw ConfigError("'" + std::string(key) + "' must be a boolean");
    return obj.at(key).get<bool>();
}

std::ofstream open_sink(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeFailure("cannot open output file: " + path);
    return out;
}

struct EngineSetup {
    EngineOptions options;
    std::uint64_t seed = kDefaultSeed;
    std::string event_log_path;
    std::string timeseries_path;
    std::string report_path;
    json effective;  // mirrors everything above plus chemistry sections
};

OutflowPolicy parse_outflow(const json& cfg, const std::string& chemistry,
                            json& effective) {
    OutflowPolicy policy;
    std::string name = chemistry == "alchemy" ? "constant_population" : "none";
    if (cfg.contains("outflow")) {
        const json& o = cfg.at("outflow");
        check_keys(o, "outflow", {"policy", "rate"});
        name = require(o, "policy", "outflow").get<std::string>();
        policy.rate = number_or(o, "rate", 0.0);
    }
    if (name == "none") {
        policy.kind = OutflowPolicy::Kind::None;
    } else if (name == "constant_population") {
        policy.kind = OutflowPolicy::Kind::ConstantPopulation;
    } else if (name == "rate") {
        policy.kind = OutflowPolicy::Kind::Rate;
        if (policy.rate < 0.0 || policy.rate > 1.0)
            throw ConfigError("outflow rate must be in [0,1]");
    } else {
        throw ConfigError("unknown outflow policy '" + name + "'");
    }
    effective["outflow"] = {{"policy", name}};
    if (policy.kind == OutflowPolicy::Kind::Rate)
        effective["outflow"]["rate"] = policy.rate;
    return policy;
}

EngineSetup parse_engine(const json& cfg, const std::string& chemistry,
                         std::optional<std::uint64_t> seed_override) {
    check_keys(cfg, "config",
               {"seed", "max_steps", "chemistry", "chemistry_params",
                "initial_population", "outflow", "symmetric_collisions",
                "track_instances", "sample_every", "output"});
    EngineSetup setup;
    setup.seed = seed_override.value_or(
        static_cast<std::uint64_t>(int_or(cfg, "seed", static_cast<std::int64_t>(kDefaultSeed))));
    setup.options.max_steps = int_or(cfg, "max_steps", 0);
    if (setup.options.max_steps < 1)
        throw ConfigError("'max_steps' must be an integer >= 1");
    setup.options.symmetric_collisions = bool_or(cfg, "symmetric_collisions", true);
    setup.options.track_instances = bool_or(cfg, "track_instances", false);
    setup.options.sample_every = int_or(cfg, "sample_every", 100);
    if (setup.options.sample_every < 1)
        throw ConfigError("'sample_every' must be an integer >= 1");

    const json& output = require(cfg, "output", "config");
    check_keys(output, "output", {"event_log", "timeseries", "report"});
    setup.event_log_path = require(output, "event_log", "output").get<std::string>();
    setup.timeseries_path = require(output, "timeseries", "output").get<std::string>();
    setup.report_path = require(output, "report", "output").get<std::string>();
    const std::set<std::string> distinct{setup.event_log_path, setup.timeseries_path,
                                         setup.report_path};
    if (distinct.size() != 3) throw ConfigError("output paths must be distinct");

    setup.effective = {{"seed", setup.seed},
                       {"max_steps", setup.options.max_steps},
                       {"chemistry", chemistry},
                       {"symmetric_collisions", setup.options.symmetric_collisions},
                       {"track_instances", setup.options.track_instances},
                       {"sample_every", setup.options.sample_every},
                       {"output",
                        {{"event_log", setup.event_log_path},
                         {"timeseries", setup.timeseries_path},
                         {"report", setup.report_path}}}};
    setup.options.outflow = parse_outflow(cfg, chemistry, setup.effective);
    return setup;
}

lambda::CollisionLaw parse_alchemy_params(const json& params, json& effective) {
    check_keys(params, "chemistry_params",
               {"phi", "max_steps", "max_nodes", "require_abstraction_operator",
                "reject_variable_products"});
    lambda::CollisionLaw law = lambda::default_collision_law();
    if (params.contains("phi"))
        law.phi = lambda::parse(params.at("phi").get<std::string>());
    if (!law.phi.is_abs())
        throw ConfigError("chemistry_params.phi must be an abstraction");
    law.budget.max_steps =
        static_cast<int>(int_or(params, "max_steps", law.budget.max_steps));
    law.budget.max_nodes =
        static_cast<int>(int_or(params, "max_nodes", law.budget.max_nodes));
    if (law.budget.max_steps < 1 || law.budget.max_nodes < 1)
        throw ConfigError("chemistry_params budget must be strictly positive");
    law.require_abstraction_operator =
        bool_or(params, "require_abstraction_operator", false);
    law.reject_variable_products = bool_or(params, "reject_variable_products", true);
    effective["chemistry_params"] = {
        {"phi", lambda::to_string(law.phi)},
        {"max_steps", law.budget.max_steps},
        {"max_nodes", law.budget.max_nodes},
        {"require_abstraction_operator", law.require_abstraction_operator},
        {"reject_variable_products", law.reject_variable_products}};
    return law;
}

struct ArmsSetup {
    std::vector<arms::ArmsRule> rules;
    arms::StepOptions step_options;
    int alphabet_size = 4;  // for random initial states
};

ArmsSetup parse_arms_params(const json& params, Rng& rng, json& effective) {
    check_keys(params, "chemistry_params",
               {"rules", "random_rules", "stochastic_rule_choice"});
    if (params.contains("rules") == params.contains("random_rules"))
        throw ConfigError(
            "arms chemistry_params needs exactly one of 'rules' or 'random_rules'");
    ArmsSetup setup;
    setup.step_options.stochastic_rule_choice =
        bool_or(params, "stochastic_rule_choice", false);
    json rules_text = json::array();
    if (params.contains("rules")) {
        std::string text;
        for (const auto& line : params.at("rules")) {
            text += line.get<std::string>();
            text += '\n';
        }
        setup.rules = arms::parse_ruleset(text);
    } else {
        const json& rr = params.at("random_rules");
        check_keys(rr, "random_rules",
                   {"n_rules", "alphabet_size", "max_side_size",
                    "target_order_parameter"});
        arms::RulesetParams rp;
        rp.n_rules = static_cast<int>(int_or(rr, "n_rules", 8));
        rp.alphabet_size = static_cast<int>(int_or(rr, "alphabet_size", 4));
        rp.max_side_size = static_cast<int>(int_or(rr, "max_side_size", 3));
        rp.target_order_parameter = number_or(rr, "target_order_parameter", 0.5);
        setup.rules = arms::random_ruleset(rng, rp);
        setup.alphabet_size = rp.alphabet_size;
    }
    for (const auto& rule : setup.rules) {
        std::string line = rule.lhs.to_text() + " ->";
        if (!rule.rhs.empty()) line += " " + rule.rhs.to_text();
        rules_text.push_back(line);
    }
    effective["chemistry_params"] = {
        {"rules", rules_text},
        {"stochastic_rule_choice", setup.step_options.stochastic_rule_choice}};
    return setup;
}

Population<lambda::Term> build_lambda_population(const json& spec,
                                                 const lambda::CollisionLaw& law,
                                                 Rng& rng, json& effective) {
    Population<lambda::Term> pop;
    std::int64_t next_id = 0;
    auto add = [&](const lambda::Term& term, std::int64_t count) {
        const auto species = pop.intern(lambda::canonical_key(term), term);
        for (std::int64_t i = 0; i < count; ++i) pop.add(species, next_id++);
    };
    const std::string kind = require(spec, "kind", "initial_population").get<std::string>();
    if (kind == "random_terms") {
        check_keys(spec, "initial_population",
                   {"kind", "count", "max_depth", "var_pool_size", "p_var", "p_abs",
                    "p_app", "closed", "normalize"});
        const std::int64_t count = int_or(spec, "count", 0);
        if (count < 1) throw ConfigError("initial_population.count must be >= 1");
        lambda::RandomTermParams params;
        params.max_depth = static_cast<int>(int_or(spec, "max_depth", 6));
        params.var_pool_size = static_cast<int>(int_or(spec, "var_pool_size", 3));
        params.p_var = number_or(spec, "p_var", 0.3);
        params.p_abs = number_or(spec, "p_abs", 0.35);
        params.p_app = number_or(spec, "p_app", 0.35);
        params.closed = bool_or(spec, "closed", true);
        const bool normalize = bool_or(spec, "normalize", true);
        for (std::int64_t i = 0; i < count; ++i) {
            bool placed = false;
            for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
                lambda::Term term = lambda::random_term(rng, params);
                if (normalize) {
                    auto reduced = lambda::normal_form(term, law.budget);
                    if (reduced.exhausted) continue;  // redraw divergent terms
                    term = reduced.term;
                }
                add(term, 1);
                placed = true;
            }
            if (!placed)
                throw ConfigError(
                    "initial_population: could not draw a normalizing term in 100 tries");
        }
        effective["initial_population"] = {
            {"kind", kind},           {"count", count},
            {"max_depth", params.max_depth}, {"var_pool_size", params.var_pool_size},
            {"p_var", params.p_var},  {"p_abs", params.p_abs},
            {"p_app", params.p_app},  {"closed", params.closed},
            {"normalize", normalize}};
    } else if (kind == "explicit") {
        check_keys(spec, "initial_population", {"kind", "molecules"});
        for (const auto& entry : require(spec, "molecules", "initial_population")) {
            check_keys(entry, "initial_population.molecules", {"term", "count"});
            const std::int64_t count = int_or(entry, "count", 1);
            if (count < 1) throw ConfigError("molecule count must be >= 1");
            add(lambda::parse(require(entry, "term", "molecules").get<std::string>()),
                count);
        }
        effective["initial_population"] = spec;
    } else {
        throw ConfigError("unknown initial_population.kind '" + kind +
                          "' for the alchemy chemistry");
    }
    return pop;
}

Population<tile::Tile> build_tile_population(const json& spec, Rng& rng,
                                             json& effective) {
    Population<tile::Tile> pop;
    std::int64_t next_id = 0;
    auto add = [&](const tile::Tile& t, std::int64_t count) {
        const auto species = pop.intern(t.key(), t);
        for (std::int64_t i = 0; i < count; ++i) pop.add(species, next_id++);
    };
    const std::string kind = require(spec, "kind", "initial_population").get<std::string>();
    if (kind == "random_tiles") {
        check_keys(spec, "initial_population", {"kind", "count", "min_area", "max_area"});
        const std::int64_t count = int_or(spec, "count", 0);
        if (count < 1) throw ConfigError("initial_population.count must be >= 1");
        const auto min_area = int_or(spec, "min_area", 1);
        const auto max_area = int_or(spec, "max_area", 6);
        if (min_area < 1 || max_area < min_area)
            throw ConfigError("initial_population needs 1 <= min_area <= max_area");
        for (std::int64_t i = 0; i < count; ++i) {
            const auto area =
                min_area + static_cast<std::int64_t>(
                               rng.bounded(static_cast<std::uint64_t>(max_area - min_area + 1)));
            add(tile::random_tile(rng, static_cast<int>(area)), 1);
        }
        effective["initial_population"] = {{"kind", kind},
                                           {"count", count},
                                           {"min_area", min_area},
                                           {"max_area", max_area}};
    } else if (kind == "explicit") {
        check_keys(spec, "initial_population", {"kind", "molecules"});
        for (const auto& entry : require(spec, "molecules", "initial_population")) {
            check_keys(entry, "initial_population.molecules", {"tile", "count"});
            const std::int64_t count = int_or(entry, "count", 1);
            if (count < 1) throw ConfigError("molecule count must be >= 1");
            add(tile::parse_tile(require(entry, "tile", "molecules").get<std::string>()),
                count);
        }
        effective["initial_population"] = spec;
    } else {
        throw ConfigError("unknown initial_population.kind '" + kind +
                          "' for the tile chemistry");
    }
    return pop;
}

Population<arms::SymbolMultiset> build_arms_population(const json& spec,
                                                       const ArmsSetup& setup,
                                                       Rng& rng, json& effective) {
    Population<arms::SymbolMultiset> pop;
    arms::SymbolMultiset state;
    const std::string kind = require(spec, "kind", "initial_population").get<std::string>();
    if (kind == "state") {
        check_keys(spec, "initial_population", {"kind", "counts"});
        for (const auto& [symbol, count] :
             require(spec, "counts", "initial_population").items()) {
            if (!count.is_number_integer() || count.get<std::int64_t>() < 1)
                throw ConfigError("state counts must be integers >= 1");
            state.add(symbol, count.get<std::int64_t>());
        }
        effective["initial_population"] = spec;
    } else if (kind == "random_state") {
        check_keys(spec, "initial_population", {"kind", "size", "alphabet_size"});
        const std::int64_t size = int_or(spec, "size", 8);
        const std::int64_t alphabet =
            int_or(spec, "alphabet_size", setup.alphabet_size);
        if (size < 0 || alphabet < 1)
            throw ConfigError("random_state needs size >= 0 and alphabet_size >= 1");
        for (std::int64_t i = 0; i < size; ++i)
            state.add("s" + std::to_string(rng.bounded(static_cast<std::uint64_t>(alphabet))));
        effective["initial_population"] = {
            {"kind", kind}, {"size", size}, {"alphabet_size", alphabet}};
    } else {
        throw ConfigError("unknown initial_population.kind '" + kind +
                          "' for the arms chemistry");
    }
    pop.add(pop.intern(state.key(), state), 0);
    return pop;
}

using SpeciesTableFn = json (*)(const std::vector<std::string>& keys);

template <class Chem>
ExperimentSummary execute(Population<typename Chem::Molecule>& pop, const Chem& chem,
                          EngineSetup& setup, Rng& rng,
                          SpeciesTableFn species_table_fn = nullptr) {
    auto events = open_sink(setup.event_log_path);
    auto timeseries = open_sink(setup.timeseries_path);
    timeseries << "t,species_key,count\n";

    const auto result =
        run_reactor(pop, chem, setup.options, rng, &events, &timeseries);

    ExperimentSummary summary;
    summary.effective_config = setup.effective;
    summary.outcome = result.outcome;
    summary.steps_executed = result.steps_executed;
    summary.events_emitted = result.events_emitted;
    const auto counts = pop.counts_map();
    summary.final_population = 0;
    for (const auto& [key, n] : counts) summary.final_population += n;
    summary.species_count = static_cast<std::int64_t>(counts.size());
    if (summary.final_population > 0)
        summary.final_entropy_bits = info::population_entropy(counts);
    if (species_table_fn != nullptr)
        summary.species_table = species_table_fn(pop.species_keys());

    if (!events || !timeseries) throw RuntimeFailure("failed writing output files");
    events.close();
    timeseries.close();

    auto report = open_sink(setup.report_path);
    report << summary.report().dump(2) << '\n';
    if (!report) throw RuntimeFailure("failed writing report file");
    return summary;
}

}  // namespace

json ExperimentSummary::report() const {
    json out{{"config", effective_config},
             {"outcome", outcome},
             {"steps_executed", steps_executed},
             {"events_emitted", events_emitted},
             {"final_population", final_population},
             {"species_count", species_count}};
    out["final_entropy_bits"] =
        final_entropy_bits.has_value() ? json(*final_entropy_bits) : json(nullptr);
    if (species_table.has_value()) out["species_table"] = *species_table;
    return out;
}

ExperimentSummary run_experiment(const nlohmann::json& config,
                                 std::optional<std::uint64_t> seed_override) {
    const std::string chemistry =
        require(config, "chemistry", "config").get<std::string>();
    if (chemistry != "alchemy" && chemistry != "tile" && chemistry != "arms")
        throw ConfigError("unknown chemistry '" + chemistry +
                          "' (expected alchemy, tile, or arms)");
    EngineSetup setup = parse_engine(config, chemistry, seed_override);
    Rng rng(setup.seed);
    const json params = config.contains("chemistry_params")
                            ? config.at("chemistry_params")
                            : json::object();
    const json& pop_spec = require(config, "initial_population", "config");

    if (chemistry == "alchemy") {
        const auto law = parse_alchemy_params(params, setup.effective);
        AlchemyChemistry chem(law);
        auto pop = build_lambda_population(pop_spec, law, rng, setup.effective);
        return execute(pop, chem, setup, rng);
    }
    if (chemistry == "tile") {
        check_keys(params, "chemistry_params", {});
        setup.effective["chemistry_params"] = json::object();
        TileChemistry chem;
        auto pop = build_tile_population(pop_spec, rng, setup.effective);
        // tiles carry their cell coordinates alongside the grid key
        auto table_fn = [](const std::vector<std::string>& keys) {
            json table = json::array();
            for (const auto& key : keys) {
                const auto parsed = tile::parse_tile(key);
                json cells = json::array();
                for (const auto& cell : parsed.cells())
                    cells.push_back(json::array({cell.x, cell.y}));
                table.push_back({{"key", key}, {"cells", cells}});
            }
            return table;
        };
        return execute(pop, chem, setup, rng, +table_fn);
    }
    ArmsSetup arms_setup = parse_arms_params(params, rng, setup.effective);
    ArmsChemistry chem(arms_setup.rules, arms_setup.step_options);
    auto pop = build_arms_population(pop_spec, arms_setup, rng, setup.effective);
    return execute(pop, chem, setup, rng);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
}

}  // namespace protolife::reactor
