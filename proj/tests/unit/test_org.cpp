#include <doctest.h>

#include <sstream>

#include "protolife/errors.hpp"
#include "protolife/org/analyze.hpp"
#include "protolife/org/network.hpp"
#include "protolife/org/replication.hpp"
#include "protolife/reactor/chemistry.hpp"
#include "protolife/reactor/reactor.hpp"

using namespace protolife;
using namespace protolife::org;
using protolife::reactor::EventLog;
using protolife::reactor::parse_event_log;

namespace {

EventLog log_from(const std::string& jsonl) {
    std::istringstream in(jsonl);
    return parse_event_log(in);
}

// two-reactant event producing `products`, optionally with lineage ids
std::string event_line(int t, const std::string& r1, const std::string& r2,
                       const std::string& p, long long id1, long long id2,
                       long long pid) {
    std::ostringstream out;
    out << "{\"t\":" << t << ",\"reactants\":[\"" << r1 << "\",\"" << r2
        << "\"],\"products\":[\"" << p << "\"],\"new\":[true],\"rid\":[" << id1
        << "," << id2 << "],\"pid\":[" << pid << "]}\n";
    return out.str();
}

}  // namespace

TEST_SUITE("org") {

TEST_CASE("build_network aggregates and drops pass-through products") {
    CHECK(build_network(EventLog{}).species.empty());

    auto log = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"b\"],\"products\":[\"a\",\"b\",\"c\"],"
        "\"new\":[false,false,true]}\n"
        "{\"t\":2,\"reactants\":[\"a\",\"b\"],\"products\":[\"a\",\"b\",\"c\"],"
        "\"new\":[false,false,true]}\n");
    const auto net = build_network(log);
    CHECK(net.species == std::set<std::string>{"a", "b", "c"});
    REQUIRE(net.reactions.size() == 1);
    const auto& [reaction, count] = *net.reactions.begin();
    CHECK(count == 2);
    CHECK(reaction.reactants == std::map<std::string, std::int64_t>{{"a", 1}, {"b", 1}});
    CHECK(reaction.products == std::map<std::string, std::int64_t>{{"c", 1}});
}

TEST_CASE("closure and self-maintenance predicates") {
    auto log = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"b\"],\"products\":[\"c\"],\"new\":[true]}\n");
    const auto net = build_network(log);
    CHECK(is_closed(net.species, net));
    CHECK(!is_closed({"a", "b"}, net));
    CHECK_THROWS_AS(is_closed({"zzz"}, net), UnknownSpecies);

    auto self_log = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"a\"],\"products\":[\"a\"],\"new\":[true]}\n");
    const auto self_net = build_network(self_log);
    CHECK(is_closed({"a"}, self_net));
    CHECK(is_self_maintaining({"a"}, self_net));
    CHECK(is_self_maintaining({}, self_net));  // vacuous

    auto partial = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"b\"],\"products\":[\"a\"],\"new\":[true]}\n");
    const auto partial_net = build_network(partial);
    CHECK(!is_self_maintaining({"a", "b"}, partial_net));
    CHECK(is_self_maintaining({"a", "b"}, partial_net, {"b"}));
}

TEST_CASE("flow-free full species set is closed; initials make it maintained") {
    auto log = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"b\"],\"products\":[\"c\"],\"new\":[true]}\n"
        "{\"t\":2,\"reactants\":[\"a\",\"c\"],\"products\":[\"d\"],\"new\":[true]}\n");
    const auto net = build_network(log);
    CHECK(is_closed(net.species, net));
    CHECK(!is_self_maintaining(net.species, net));
    CHECK(is_self_maintaining(net.species, net, {"a", "b"}));
}

TEST_CASE("three-reaction network is a level-1 organization") {
    auto log = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"b\"],\"products\":[\"c\"],\"new\":[true]}\n"
        "{\"t\":2,\"reactants\":[\"c\",\"c\"],\"products\":[\"a\"],\"new\":[true]}\n"
        "{\"t\":3,\"reactants\":[\"a\",\"c\"],\"products\":[\"b\"],\"new\":[true]}\n");
    const auto net = build_network(log);
    CHECK(is_closed({"a", "b", "c"}, net));
    CHECK(is_self_maintaining({"a", "b", "c"}, net));

    const auto report = classify_organizations(net, {});
    REQUIRE(report.level1.size() == 1);
    CHECK(report.level1[0] == std::set<std::string>{"a", "b", "c"});
    CHECK(report.level0.empty());
}

TEST_CASE("single self-copier is level-0 and level-1") {
    auto log = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"a\"],\"products\":[\"a\"],\"new\":[true]}\n");
    const auto net = build_network(log);
    const auto report = classify_organizations(net, {{"a"}});
    REQUIRE(report.level0.size() == 1);
    CHECK(report.level0[0] == std::set<std::string>{"a"});
    REQUIRE(report.level1.size() == 1);
    CHECK(report.level1[0] == std::set<std::string>{"a"});
}

TEST_CASE("empty network classifies to nothing") {
    const auto report = classify_organizations(build_network(EventLog{}), {});
    CHECK(report.level0.empty());
    CHECK(report.level1.empty());
    CHECK(report.level2.empty());
}

TEST_CASE("two interdependent level-1 sets form a level-2 pair") {
    // a and b each copy themselves, and each also gets produced with the
    // other's help
    auto log = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"a\"],\"products\":[\"a\"],\"new\":[true]}\n"
        "{\"t\":2,\"reactants\":[\"b\",\"b\"],\"products\":[\"b\"],\"new\":[true]}\n"
        "{\"t\":3,\"reactants\":[\"a\",\"b\"],\"products\":[\"a\"],\"new\":[true]}\n"
        "{\"t\":4,\"reactants\":[\"a\",\"b\"],\"products\":[\"b\"],\"new\":[true]}\n");
    const auto net = build_network(log);
    const auto report = classify_organizations(net, {{"a"}, {"b"}});
    // pruning from {a,b} and from the seeds gives three level-1 organizations
    CHECK(report.level1.size() == 3);
    REQUIRE(report.level2.size() == 1);
    CHECK(report.level2[0].first == std::set<std::string>{"a"});
    CHECK(report.level2[0].second == std::set<std::string>{"b"});
}

TEST_CASE("hypercycle detection") {
    auto log = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"x\"],\"products\":[\"b\"],\"new\":[true]}\n"
        "{\"t\":2,\"reactants\":[\"b\",\"y\"],\"products\":[\"a\"],\"new\":[true]}\n");
    const auto cycles = detect_hypercycles(build_network(log));
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0] == std::vector<std::string>{"a", "b"});

    auto dag = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"a\"],\"products\":[\"b\"],\"new\":[true]}\n"
        "{\"t\":2,\"reactants\":[\"b\",\"b\"],\"products\":[\"c\"],\"new\":[true]}\n");
    CHECK(detect_hypercycles(build_network(dag)).empty());

    // self-production is period-1 replication, not a cycle edge
    auto self_copy = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"a\"],\"products\":[\"a\"],\"new\":[true]}\n");
    CHECK(detect_hypercycles(build_network(self_copy)).empty());
}

TEST_CASE("hypercycle enumeration respects the length cap") {
    std::string jsonl;
    for (int i = 0; i < 12; ++i) {
        const std::string u = "n" + std::to_string(i);
        const std::string v = "n" + std::to_string((i + 1) % 12);
        jsonl += "{\"t\":" + std::to_string(i + 1) + ",\"reactants\":[\"" + u +
                 "\",\"f\"],\"products\":[\"" + v + "\"],\"new\":[true]}\n";
    }
    const auto net = build_network(log_from(jsonl));
    CHECK(detect_hypercycles(net, {8, 1000}).empty());  // 12-cycle exceeds cap
    CHECK(detect_hypercycles(net, {12, 1000}).size() == 1);
}

TEST_CASE("replicator detection on a hand-built lineage") {
    // a(0) + b(1) -> c(4); c(4) + d(2) -> a(5): class [a] replicates in 2 steps
    std::string jsonl = event_line(1, "a", "b", "c", 0, 1, 4) +
                        event_line(2, "c", "d", "a", 4, 2, 5);
    const auto log = log_from(jsonl);
    const auto reports = detect_replicators(log, ExactEquivalence{}, 5);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].class_id == "a");
    CHECK(reports[0].period == 2);
    CHECK(reports[0].witness_events == std::vector<std::size_t>{0, 1});
    CHECK(verify_witness(log, reports[0], ExactEquivalence{}));
}

TEST_CASE("replicator detection reports the minimal period") {
    // a also replicates in one step via a different event
    std::string jsonl = event_line(1, "a", "b", "c", 0, 1, 4) +
                        event_line(2, "a", "b", "a", 0, 1, 5) +
                        event_line(3, "c", "d", "a", 4, 2, 6);
    const auto reports = detect_replicators(log_from(jsonl), ExactEquivalence{}, 5);
    REQUIRE(!reports.empty());
    bool found_a = false;
    for (const auto& r : reports) {
        if (r.class_id == "a") {
            found_a = true;
            CHECK(r.period == 1);
        }
    }
    CHECK(found_a);
}

TEST_CASE("a copying collision law yields period-1 replicators") {
    // Φ = λx.λy.x returns the first reactant, so every successful collision
    // newly produces a molecule in the operator's class
    lambda::CollisionLaw law = lambda::default_collision_law();
    law.phi = lambda::parse("λx.λy.x");
    law.budget = lambda::ReductionBudget{500, 5000};
    reactor::AlchemyChemistry chem(law);

    reactor::Population<lambda::Term> pop;
    std::int64_t id = 0;
    for (const char* text : {"λx.x", "λx.λy.y", "λx.λy.(y)x"}) {
        const auto term = lambda::parse(text);
        const auto species = pop.intern(lambda::canonical_key(term), term);
        for (int i = 0; i < 5; ++i) pop.add(species, id++);
    }
    reactor::EngineOptions options;
    options.max_steps = 60;
    options.outflow.kind = reactor::OutflowPolicy::Kind::None;
    options.track_instances = true;
    Rng rng(13);
    std::ostringstream events;
    const auto result = reactor::run_reactor(pop, chem, options, rng, &events, nullptr);
    REQUIRE(result.events_emitted > 0);

    std::istringstream in(events.str());
    const auto log = reactor::parse_event_log(in);
    const auto reports = detect_replicators(log, ExactEquivalence{}, 3);
    REQUIRE(!reports.empty());
    for (const auto& report : reports) {
        CHECK(report.period == 1);
        CHECK(verify_witness(log, report, ExactEquivalence{}));
    }
}

TEST_CASE("no chain within the period cap means no report") {
    std::string jsonl = event_line(1, "a", "b", "c", 0, 1, 4) +
                        event_line(2, "c", "d", "e", 4, 2, 5);
    CHECK(detect_replicators(log_from(jsonl), ExactEquivalence{}, 5).empty());
}

TEST_CASE("missing instance ids are rejected") {
    auto log = log_from(
        "{\"t\":1,\"reactants\":[\"a\",\"b\"],\"products\":[\"c\"],\"new\":[true]}\n");
    CHECK_THROWS_AS(detect_replicators(log, ExactEquivalence{}, 3),
                    MissingInstanceIds);
}

TEST_CASE("tile shape classes ignore integer scale") {
    TileShapeEquivalence shape{};
    CHECK(class_of("#", shape) == class_of("##/##", shape));
    CHECK(class_of("#", shape) != class_of("##", shape));
    // 2x and 3x scalings share a class even though neither scales to the other
    CHECK(class_of("####/####/####/####", shape) == class_of("#", shape));
    CHECK_THROWS_AS(class_of("not a tile", shape), ConfigError);

    TileShapeEquivalence rotating{{true, false}};
    CHECK(class_of("##", rotating) == class_of("#/#", rotating));
    CHECK(class_of("##", shape) != class_of("#/#", shape));
}

TEST_CASE("functional equivalence compares probe signatures") {
    FunctionalEquivalence eq;
    eq.probes = {lambda::parse("λz.z")};
    eq.budget = lambda::ReductionBudget{500, 5000};

    CHECK(functional_equiv(lambda::parse("λx.x"), lambda::parse("λx.x"), eq));
    CHECK(functional_equiv(lambda::parse("λx.x"),
                           lambda::parse("λx.(λy.y)x"), eq));
    CHECK(!functional_equiv(lambda::parse("λx.x"), lambda::parse("λx.λy.y"), eq));

    FunctionalEquivalence empty;
    empty.budget = eq.budget;
    CHECK_THROWS_AS(functional_equiv(lambda::parse("λx.x"), lambda::parse("λx.x"),
                                     empty),
                    ConfigError);

    // equivalence-relation sanity on a small term set
    std::vector<lambda::Term> terms{lambda::parse("λx.x"), lambda::parse("λx.(λy.y)x"),
                                    lambda::parse("λx.λy.y"), lambda::parse("λx.λy.x")};
    for (const auto& a : terms) CHECK(functional_equiv(a, a, eq));
    for (const auto& a : terms)
        for (const auto& b : terms)
            CHECK(functional_equiv(a, b, eq) == functional_equiv(b, a, eq));

    // exhaustion is a value equal only to itself
    FunctionalEquivalence tiny;
    tiny.probes = {lambda::parse("λz.(z)z")};
    tiny.budget = lambda::ReductionBudget{5, 100};
    CHECK(functional_equiv(lambda::parse("λx.((x)x)x"),
                           lambda::parse("λx.((x)x)x"), tiny));

    CHECK_THROWS_AS(class_of("##", FunctionalEquivalence{{lambda::parse("λz.z")},
                                                         {100, 1000},
                                                         std::nullopt}),
                    ConfigError);
}

TEST_CASE("analyze_log assembles the full report") {
    std::string jsonl = event_line(1, "a", "b", "c", 0, 1, 4) +
                        event_line(2, "c", "d", "a", 4, 2, 5);
    AnalyzeOptions options;
    const auto report = analyze_log(log_from(jsonl), options);
    CHECK(report["replicators"].size() == 1);
    CHECK(report["replicators"][0]["period"] == 2);
    CHECK(report["event_count"] == 2);
    CHECK(report["entropy_series_file"].is_null());

    const auto empty_report = analyze_log(EventLog{}, options);
    CHECK(empty_report["replicators"].empty());
    CHECK(empty_report["hypercycles"].empty());
    CHECK(empty_report["organizations"]["level1"].empty());
}

}  // TEST_SUITE
