#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace protolife::reactor {

struct ExperimentSummary {
    nlohmann::json effective_config;
    std::string outcome;
    std::int64_t steps_executed = 0;
    std::int64_t events_emitted = 0;
    std::int64_t final_population = 0;
    std::int64_t species_count = 0;
    std::optional<double> final_entropy_bits;
    // tile runs: every observed species key with its cell coordinates
    std::optional<nlohmann::json> species_table;

    // What gets written to the report path: the effective config (defaults
    // applied) plus the run outcome.
    nlohmann::json report() const;
};

// Validates the config strictly (unknown keys are rejected with the offending
// key named), builds the chemistry and initial population, runs the reactor,
// and writes the event log, time series, and report files. seed_override
// replaces the config seed when present.
ExperimentSummary run_experiment(const nlohmann::json& config,
                                 std::optional<std::uint64_t> seed_override = {});

nlohmann::json load_json_file(const std::string& path);

}  // namespace protolife::reactor
