#include "protolife/org/analyze.hpp"

namespace protolife::org {

using nlohmann::json;

json analyze_log(const reactor::EventLog& log, const AnalyzeOptions& options) {
    const auto net = build_network(log);

    std::vector<ReplicatorReport> replicators;
    if (!options.skip_replicators && log.event_count() > 0)
        replicators = detect_replicators(log, options.equivalence, options.max_period);

    std::vector<std::set<std::string>> replicator_classes;
    for (const auto& report : replicators)
        replicator_classes.emplace_back(report.members.begin(), report.members.end());
    const auto organizations = classify_organizations(net, replicator_classes);
    const auto hypercycles = detect_hypercycles(net, options.hypercycles);

    json out;
    auto sets_to_json = [](const std::vector<std::set<std::string>>& sets) {
        json arr = json::array();
        for (const auto& s : sets) arr.push_back(s);
        return arr;
    };
    out["organizations"] = {{"level0", sets_to_json(organizations.level0)},
                            {"level1", sets_to_json(organizations.level1)},
                            {"level2", json::array()}};
    for (const auto& [s1, s2] : organizations.level2)
        out["organizations"]["level2"].push_back({{"first", s1}, {"second", s2}});

    out["replicators"] = json::array();
    for (const auto& report : replicators) {
        out["replicators"].push_back({{"class", report.class_id},
                                      {"members", report.members},
                                      {"period", report.period},
                                      {"witness_events", report.witness_events},
                                      {"equivalence", report.equivalence}});
    }

    out["hypercycles"] = json::array();
    for (const auto& cycle : hypercycles) out["hypercycles"].push_back(cycle);

    out["species_count"] = net.species.size();
    out["event_count"] = log.event_count();
    out["entropy_series_file"] = options.entropy_series_file.has_value()
                                     ? json(*options.entropy_series_file)
                                     : json(nullptr);
    return out;
}

}  // namespace protolife::org
