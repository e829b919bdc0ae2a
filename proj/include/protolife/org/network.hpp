#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "protolife/reactor/event.hpp"

namespace protolife::org {

// Reactant multiset -> multiset of genuinely produced species (pass-through
// retained reactants excluded).
struct Reaction {
    std::map<std::string, std::int64_t> reactants;
    std::map<std::string, std::int64_t> products;
    auto operator<=>(const Reaction&) const = default;
};

struct ReactionNetwork {
    std::set<std::string> species;
    std::map<Reaction, std::int64_t> reactions;  // distinct reaction -> occurrences
};

// Aggregates the log's reaction events; removal records are ignored.
ReactionNetwork build_network(const reactor::EventLog& log);

// No reaction whose reactants all lie in s produces anything outside s.
// Throws UnknownSpecies when s contains a species the network lacks.
bool is_closed(const std::set<std::string>& s, const ReactionNetwork& net);

// Every species of s is produced by some reaction whose reactants lie in s.
// Species in externally_produced count as produced regardless (used to mark
// the initial population of a flow-free run).
bool is_self_maintaining(const std::set<std::string>& s, const ReactionNetwork& net,
                         const std::set<std::string>& externally_produced = {});

struct OrganizationReport {
    std::vector<std::set<std::string>> level0;  // replicator species
    std::vector<std::set<std::string>> level1;  // closed + self-maintaining
    // disjoint level-1 pairs that feed each other across the boundary
    std::vector<std::pair<std::set<std::string>, std::set<std::string>>> level2;
};

// Level-1 sets are the closed self-maintaining fixed points of iterated
// pruning, started from the full species set and from every level-0 seed.
OrganizationReport classify_organizations(
    const ReactionNetwork& net,
    const std::vector<std::set<std::string>>& replicator_classes,
    const std::set<std::string>& externally_produced = {});

struct HypercycleOptions {
    int max_length = 8;
    std::size_t max_cycles = 1000;
};

// Elementary cycles of the catalysis digraph (u -> v iff some reaction has u
// among its reactants and produces v without consuming it), length >= 2,
// deterministic order, capped by the options.
std::vector<std::vector<std::string>> detect_hypercycles(
    const ReactionNetwork& net, const HypercycleOptions& options = {});

}  // namespace protolife::org
