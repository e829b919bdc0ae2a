#include "protolife/org/replication.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "protolife/errors.hpp"

namespace protolife::org {

namespace {

// Largest-k block downscaling; the result is not a scaling of anything smaller.
tile::Tile deflate(const tile::Tile& t) {
    const int area = t.area();
    for (int k = static_cast<int>(std::sqrt(static_cast<double>(area))); k >= 2; --k) {
        if (area % (k * k) != 0) continue;
        std::set<tile::Cell> blocks;
        bool aligned = true;
        for (const auto& cell : t.cells()) {
            if (cell.x % k == 0 && cell.y % k == 0)
                blocks.insert(tile::Cell{cell.x / k, cell.y / k});
        }
        if (static_cast<int>(blocks.size()) * k * k != area) continue;
        for (const auto& block : blocks) {
            for (int dx = 0; aligned && dx < k; ++dx)
                for (int dy = 0; aligned && dy < k; ++dy)
                    aligned = std::binary_search(
                        t.cells().begin(), t.cells().end(),
                        tile::Cell{block.x * k + dx, block.y * k + dy});
            if (!aligned) break;
        }
        if (!aligned) continue;
        return tile::Tile(std::vector<tile::Cell>(blocks.begin(), blocks.end()));
    }
    return t;
}

std::string tile_class(const std::string& key, const TileShapeEquivalence& eq) {
    tile::Tile primitive = deflate(tile::parse_tile(key));
    std::string best = primitive.key();
    const int rotations = eq.flags.use_rotations ? 4 : 1;
    for (int refl = 0; refl < (eq.flags.use_reflections ? 2 : 1); ++refl) {
        for (int rot = 0; rot < rotations; ++rot) {
            std::vector<tile::Cell> cells = primitive.cells();
            if (refl != 0)
                for (auto& c : cells) c.x = -c.x;
            for (int r = 0; r < rot; ++r)
                for (auto& c : cells) c = tile::Cell{c.y, -c.x};
            best = std::min(best, tile::Tile(std::move(cells)).key());
        }
    }
    return "shape:" + best;
}

constexpr const char* kExhaustedMark = "!exhausted";

std::string probe_outcome(const lambda::Term& term,
                          const lambda::ReductionBudget& budget) {
    const auto result = lambda::normal_form(term, budget);
    if (result.exhausted) return kExhaustedMark;
    return lambda::canonical_key(result.term);
}

std::string functional_signature(const lambda::Term& term,
                                 const FunctionalEquivalence& eq) {
    if (eq.probes.empty())
        throw ConfigError("functional equivalence needs a nonempty probe set");
    std::string signature;
    for (const auto& probe : eq.probes) {
        signature += probe_outcome(lambda::Term::app(term, probe), eq.budget);
        signature += '\x1f';
        signature += probe_outcome(lambda::Term::app(probe, term), eq.budget);
        signature += '\x1e';
    }
    return signature;
}

std::string class_of_impl(const std::string& key, const EquivalenceSpec& eq) {
    if (std::holds_alternative<ExactEquivalence>(eq)) return key;
    try {
        if (const auto* shape = std::get_if<TileShapeEquivalence>(&eq))
            return tile_class(key, *shape);
        const auto& fn = std::get<FunctionalEquivalence>(eq);
        return functional_signature(lambda::parse(key), fn);
    } catch (const SyntaxError& e) {
        throw ConfigError("species key '" + key +
                          "' does not parse under the chosen equivalence: " +
                          e.what());
    }
}

}  // namespace

std::string class_of(const std::string& species_key, const EquivalenceSpec& eq) {
    return class_of_impl(species_key, eq);
}

bool functional_equiv(const lambda::Term& a, const lambda::Term& b,
                      const FunctionalEquivalence& spec) {
    return functional_signature(a, spec) == functional_signature(b, spec);
}

namespace {

const char* equivalence_name(const EquivalenceSpec& eq) {
    if (std::holds_alternative<ExactEquivalence>(eq)) return "exact";
    if (std::holds_alternative<TileShapeEquivalence>(eq)) return "tileshape";
    return "functional";
}

struct Lineage {
    std::vector<std::size_t> event_records;  // record indices of events
    // instance id -> later events consuming it
    std::map<std::int64_t, std::vector<std::size_t>> consumers;
};

Lineage build_lineage(const reactor::EventLog& log) {
    Lineage lineage;
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const auto* event = std::get_if<reactor::ReactionEvent>(&log.records[i]);
        if (event == nullptr) continue;
        if (!event->has_instance_ids)
            throw MissingInstanceIds(
                "replication detection needs a log recorded with track_instances");
        lineage.event_records.push_back(i);
        for (const auto id : event->reactant_ids)
            lineage.consumers[id].push_back(i);
    }
    return lineage;
}

}  // namespace

std::vector<ReplicatorReport> detect_replicators(const reactor::EventLog& log,
                                                 const EquivalenceSpec& eq,
                                                 int max_period) {
    if (max_period < 1) throw ConfigError("max_period must be >= 1");
    const Lineage lineage = build_lineage(log);

    // class id -> sorted member keys
    std::map<std::string, std::set<std::string>> classes;
    std::map<std::string, std::string> key_class;
    auto classify = [&](const std::string& key) -> const std::string& {
        auto it = key_class.find(key);
        if (it == key_class.end()) {
            it = key_class.emplace(key, class_of_impl(key, eq)).first;
            classes[it->second].insert(key);
        }
        return it->second;
    };
    for (const auto idx : lineage.event_records) {
        const auto& event = std::get<reactor::ReactionEvent>(log.records[idx]);
        for (const auto& key : event.reactant_keys) classify(key);
        for (const auto& key : event.product_keys) classify(key);
    }

    auto has_new_product_in = [&](const reactor::ReactionEvent& event,
                                  const std::string& class_id) {
        for (std::size_t i = 0; i < event.product_keys.size(); ++i)
            if (event.new_flags[i] && key_class.at(event.product_keys[i]) == class_id)
                return true;
        return false;
    };

    std::vector<ReplicatorReport> reports;
    for (const auto& [class_id, members] : classes) {
        // BFS frontier of event record indices; parents recover the witness
        std::map<std::size_t, std::size_t> parent;
        std::set<std::size_t> visited;
        std::vector<std::size_t> frontier;
        for (const auto idx : lineage.event_records) {
            const auto& event = std::get<reactor::ReactionEvent>(log.records[idx]);
            const bool starts = std::any_of(
                event.reactant_keys.begin(), event.reactant_keys.end(),
                [&](const std::string& key) { return key_class.at(key) == class_id; });
            if (starts) {
                frontier.push_back(idx);
                visited.insert(idx);
            }
        }

        std::optional<std::pair<int, std::size_t>> found;  // (period, last event)
        for (int depth = 1; depth <= max_period && !found && !frontier.empty();
             ++depth) {
            for (const auto idx : frontier) {
                const auto& event = std::get<reactor::ReactionEvent>(log.records[idx]);
                if (has_new_product_in(event, class_id)) {
                    found = {depth, idx};
                    break;
                }
            }
            if (found) break;
            std::vector<std::size_t> next;
            for (const auto idx : frontier) {
                const auto& event = std::get<reactor::ReactionEvent>(log.records[idx]);
                for (std::size_t i = 0; i < event.product_keys.size(); ++i) {
                    if (!event.new_flags[i]) continue;
                    auto it = lineage.consumers.find(event.product_ids[i]);
                    if (it == lineage.consumers.end()) continue;
                    for (const auto consumer : it->second) {
                        if (consumer <= idx || visited.contains(consumer)) continue;
                        visited.insert(consumer);
                        parent[consumer] = idx;
                        next.push_back(consumer);
                    }
                }
            }
            std::sort(next.begin(), next.end());
            frontier = std::move(next);
        }
        if (!found) continue;

        ReplicatorReport report;
        report.class_id = class_id;
        report.members.assign(members.begin(), members.end());
        report.period = found->first;
        report.equivalence = equivalence_name(eq);
        std::size_t cursor = found->second;
        report.witness_events.assign(1, cursor);
        while (parent.contains(cursor)) {
            cursor = parent.at(cursor);
            report.witness_events.insert(report.witness_events.begin(), cursor);
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

bool verify_witness(const reactor::EventLog& log, const ReplicatorReport& report,
                    const EquivalenceSpec& eq) {
    if (report.witness_events.size() != static_cast<std::size_t>(report.period))
        return false;
    auto event_at = [&](std::size_t idx) -> const reactor::ReactionEvent* {
        if (idx >= log.records.size()) return nullptr;
        return std::get_if<reactor::ReactionEvent>(&log.records[idx]);
    };

    const auto* first = event_at(report.witness_events.front());
    if (first == nullptr) return false;
    const bool starts_in_class =
        std::any_of(first->reactant_keys.begin(), first->reactant_keys.end(),
                    [&](const std::string& key) {
                        return class_of(key, eq) == report.class_id;
                    });
    if (!starts_in_class) return false;

    for (std::size_t i = 0; i + 1 < report.witness_events.size(); ++i) {
        const auto* producer = event_at(report.witness_events[i]);
        const auto* consumer = event_at(report.witness_events[i + 1]);
        if (producer == nullptr || consumer == nullptr) return false;
        bool linked = false;
        for (std::size_t p = 0; p < producer->product_ids.size(); ++p) {
            if (!producer->new_flags[p]) continue;
            for (const auto rid : consumer->reactant_ids)
                linked = linked || rid == producer->product_ids[p];
        }
        if (!linked) return false;
    }

    const auto* last = event_at(report.witness_events.back());
    for (std::size_t i = 0; i < last->product_keys.size(); ++i)
        if (last->new_flags[i] && class_of(last->product_keys[i], eq) == report.class_id)
            return true;
    return false;
}

}  // namespace protolife::org
