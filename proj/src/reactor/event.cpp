#include "protolife/reactor/event.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "protolife/errors.hpp"

namespace protolife::reactor {

using nlohmann::json;

std::size_t EventLog::event_count() const {
    std::size_t n = 0;
    for (const auto& record : records)
        if (std::holds_alternative<ReactionEvent>(record)) ++n;
    return n;
}

bool EventLog::all_events_have_instance_ids() const {
    for (const auto& record : records) {
        const auto* event = std::get_if<ReactionEvent>(&record);
        if (event != nullptr && !event->has_instance_ids) return false;
    }
    return true;
}

namespace {

void append_string_array(std::string& out, const std::vector<std::string>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += json(values[i]).dump();
    }
    out += ']';
}

void append_id_array(std::string& out, const std::vector<std::int64_t>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(values[i]);
    }
    out += ']';
}

}  // namespace

std::string to_jsonl(const ReactionEvent& event) {
    std::string out = "{\"t\":" + std::to_string(event.t) + ",\"reactants\":";
    append_string_array(out, event.reactant_keys);
    out += ",\"products\":";
    append_string_array(out, event.product_keys);
    out += ",\"new\":[";
    for (std::size_t i = 0; i < event.new_flags.size(); ++i) {
        if (i > 0) out += ',';
        out += event.new_flags[i] ? "true" : "false";
    }
    out += ']';
    if (event.has_instance_ids) {
        out += ",\"rid\":";
        append_id_array(out, event.reactant_ids);
        out += ",\"pid\":";
        append_id_array(out, event.product_ids);
    }
    out += '}';
    return out;
}

std::string to_jsonl(const RemovalRecord& removal) {
    std::string out = "{\"t\":" + std::to_string(removal.t) + ",\"";
    out += removal.kind == RemovalRecord::Kind::Outflow ? "outflow" : "discard";
    out += "\":";
    append_string_array(out, removal.keys);
    out += '}';
    return out;
}

namespace {

std::vector<std::string> string_array(const json& j, const char* field,
                                      std::size_t line) {
    if (!j.is_array()) throw MalformedLog(std::string(field) + " is not an array", line);
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string())
            throw MalformedLog(std::string(field) + " entry is not a string", line);
        out.push_back(v.get<std::string>());
    }
    return out;
}

LogRecord parse_line(const std::string& line, std::size_t line_no) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw MalformedLog(std::string("bad JSON: ") + e.what(), line_no);
    }
    if (!j.is_object() || !j.contains("t") || !j["t"].is_number_integer())
        throw MalformedLog("record lacks integer field 't'", line_no);

    if (j.contains("outflow") || j.contains("discard")) {
        RemovalRecord removal;
        removal.t = j["t"].get<std::int64_t>();
        const bool outflow = j.contains("outflow");
        removal.kind =
            outflow ? RemovalRecord::Kind::Outflow : RemovalRecord::Kind::Discard;
        removal.keys = string_array(j[outflow ? "outflow" : "discard"],
                                    outflow ? "outflow" : "discard", line_no);
        return removal;
    }

    if (!j.contains("reactants") || !j.contains("products") || !j.contains("new"))
        throw MalformedLog("event lacks reactants/products/new", line_no);
    ReactionEvent event;
    event.t = j["t"].get<std::int64_t>();
    event.reactant_keys = string_array(j["reactants"], "reactants", line_no);
    event.product_keys = string_array(j["products"], "products", line_no);
    if (!j["new"].is_array() || j["new"].size() != event.product_keys.size())
        throw MalformedLog("'new' must parallel 'products'", line_no);
    for (const auto& v : j["new"]) {
        if (!v.is_boolean()) throw MalformedLog("'new' entry is not a boolean", line_no);
        event.new_flags.push_back(v.get<bool>());
    }
    if (j.contains("rid") != j.contains("pid"))
        throw MalformedLog("rid/pid must appear together", line_no);
    if (j.contains("rid")) {
        event.has_instance_ids = true;
        for (const auto& v : j["rid"]) event.reactant_ids.push_back(v.get<std::int64_t>());
        for (const auto& v : j["pid"]) event.product_ids.push_back(v.get<std::int64_t>());
        if (event.reactant_ids.size() != event.reactant_keys.size() ||
            event.product_ids.size() != event.product_keys.size())
            throw MalformedLog("rid/pid must parallel reactants/products", line_no);
    }
    return event;
}

}  // namespace

EventLog parse_event_log(std::istream& in) {
    EventLog log;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        log.records.push_back(parse_line(line, line_no));
    }
    return log;
}

EventLog parse_event_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RuntimeFailure("cannot open event log: " + path);
    return parse_event_log(in);
}

std::map<std::string, std::int64_t> replay_log(
    std::map<std::string, std::int64_t> counts, const EventLog& log) {
    std::size_t index = 0;
    auto take = [&](const std::string& key) {
        auto it = counts.find(key);
        if (it == counts.end() || it->second == 0)
            throw MalformedLog("replay would remove absent species '" + key + "'",
                               index);
        if (--it->second == 0) counts.erase(it);
    };
    for (const auto& record : log.records) {
        ++index;
        if (const auto* event = std::get_if<ReactionEvent>(&record)) {
            for (const auto& key : event->reactant_keys) take(key);
            for (const auto& key : event->product_keys) ++counts[key];
        } else {
            for (const auto& key : std::get<RemovalRecord>(record).keys) take(key);
        }
    }
    return counts;
}

}  // namespace protolife::reactor
