#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "protolife/org/network.hpp"
#include "protolife/org/replication.hpp"

namespace protolife::org {

struct AnalyzeOptions {
    EquivalenceSpec equivalence = ExactEquivalence{};
    int max_period = 5;
    HypercycleOptions hypercycles;
    // Without instance ids the detector cannot run; set this to analyze the
    // network structure of an untracked log anyway.
    bool skip_replicators = false;
    // Recorded in the report when the caller also wrote an entropy series.
    std::optional<std::string> entropy_series_file;
};

// Full post-hoc report over one event log: organizations, replicators,
// hypercycles.
nlohmann::json analyze_log(const reactor::EventLog& log, const AnalyzeOptions& options);

}  // namespace protolife::org
