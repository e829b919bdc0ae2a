#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace protolife::reactor {

// One reaction. Retaining chemistries list the reactants again on the product
// side with new_flags false; genuinely produced molecules carry true.
// Instance ids are present when the run tracked lineage.
struct ReactionEvent {
    std::int64_t t = 0;
    std::vector<std::string> reactant_keys;
    std::vector<std::string> product_keys;
    std::vector<bool> new_flags;
    bool has_instance_ids = false;
    std::vector<std::int64_t> reactant_ids;
    std::vector<std::int64_t> product_ids;
};

// Molecules leaving the reactor outside a reaction: outflow draws and the
// discard of both reactants after a failed fitting collision. Logged so a
// replay of the log reproduces the final population exactly.
struct RemovalRecord {
    enum class Kind { Outflow, Discard };
    std::int64_t t = 0;
    Kind kind = Kind::Outflow;
    std::vector<std::string> keys;
};

using LogRecord = std::variant<ReactionEvent, RemovalRecord>;

struct EventLog {
    std::vector<LogRecord> records;

    std::size_t event_count() const;
    bool all_events_have_instance_ids() const;
};

// JSONL lines:
//   {"t":3,"reactants":["a","b"],"products":["a","b","c"],"new":[false,false,true]}
// plus "rid"/"pid" arrays when instances are tracked;
//   {"t":4,"outflow":["c"]} / {"t":5,"discard":["a","b"]}
std::string to_jsonl(const ReactionEvent& event);
std::string to_jsonl(const RemovalRecord& removal);

// Throws MalformedLog with the 1-based line number.
EventLog parse_event_log(std::istream& in);
EventLog parse_event_log_file(const std::string& path);

// Folds the log over an initial population: reactants and removals subtract,
// products add. Throws MalformedLog if a count would go negative.
std::map<std::string, std::int64_t> replay_log(
    std::map<std::string, std::int64_t> initial, const EventLog& log);

}  // namespace protolife::reactor
