#include "protolife/org/network.hpp"

#include <algorithm>

#include "protolife/errors.hpp"

namespace protolife::org {

ReactionNetwork build_network(const reactor::EventLog& log) {
    ReactionNetwork net;
    for (const auto& record : log.records) {
        const auto* event = std::get_if<reactor::ReactionEvent>(&record);
        if (event == nullptr) continue;
        Reaction reaction;
        for (const auto& key : event->reactant_keys) {
            ++reaction.reactants[key];
            net.species.insert(key);
        }
        for (std::size_t i = 0; i < event->product_keys.size(); ++i) {
            if (!event->new_flags[i]) continue;  // pass-through reactant
            ++reaction.products[event->product_keys[i]];
            net.species.insert(event->product_keys[i]);
        }
        ++net.reactions[std::move(reaction)];
    }
    return net;
}

namespace {

void check_known(const std::set<std::string>& s, const ReactionNetwork& net) {
    for (const auto& key : s)
        if (!net.species.contains(key))
            throw UnknownSpecies("species '" + key + "' not in the network");
}

bool within(const std::map<std::string, std::int64_t>& multiset,
            const std::set<std::string>& s) {
    return std::all_of(multiset.begin(), multiset.end(),
                       [&](const auto& kv) { return s.contains(kv.first); });
}

}  // namespace

bool is_closed(const std::set<std::string>& s, const ReactionNetwork& net) {
    check_known(s, net);
    for (const auto& [reaction, count] : net.reactions) {
        if (!within(reaction.reactants, s)) continue;
        if (!within(reaction.products, s)) return false;
    }
    return true;
}

bool is_self_maintaining(const std::set<std::string>& s, const ReactionNetwork& net,
                         const std::set<std::string>& externally_produced) {
    check_known(s, net);
    for (const auto& key : s) {
        if (externally_produced.contains(key)) continue;
        bool produced = false;
        for (const auto& [reaction, count] : net.reactions) {
            if (reaction.products.contains(key) && within(reaction.reactants, s)) {
                produced = true;
                break;
            }
        }
        if (!produced) return false;
    }
    return true;
}

namespace {

// Removes species with no production inside the set until nothing changes.
std::set<std::string> prune_to_self_maintaining(
    std::set<std::string> s, const ReactionNetwork& net,
    const std::set<std::string>& externally_produced) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = s.begin(); it != s.end();) {
            bool produced = externally_produced.contains(*it);
            for (auto r = net.reactions.begin(); !produced && r != net.reactions.end();
                 ++r)
                produced = r->first.products.contains(*it) && within(r->first.reactants, s);
            if (!produced) {
                it = s.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return s;
}

// Does some reaction inside s1 ∪ s2 with a reactant from s2 produce into s1?
bool cross_supported(const std::set<std::string>& s1, const std::set<std::string>& s2,
                     const ReactionNetwork& net) {
    std::set<std::string> joint = s1;
    joint.insert(s2.begin(), s2.end());
    for (const auto& [reaction, count] : net.reactions) {
        if (!within(reaction.reactants, joint)) continue;
        const bool uses_other =
            std::any_of(reaction.reactants.begin(), reaction.reactants.end(),
                        [&](const auto& kv) { return s2.contains(kv.first); });
        if (!uses_other) continue;
        for (const auto& [product, n] : reaction.products)
            if (s1.contains(product)) return true;
    }
    return false;
}

}  // namespace

OrganizationReport classify_organizations(
    const ReactionNetwork& net,
    const std::vector<std::set<std::string>>& replicator_classes,
    const std::set<std::string>& externally_produced) {
    OrganizationReport report;

    std::set<std::string> all_replicators;
    for (const auto& cls : replicator_classes)
        for (const auto& key : cls)
            if (net.species.contains(key)) all_replicators.insert(key);
    if (!all_replicators.empty()) report.level0.push_back(all_replicators);

    std::vector<std::set<std::string>> starts{net.species};
    for (const auto& seed : report.level0) starts.push_back(seed);
    for (const auto& cls : replicator_classes) {
        std::set<std::string> seed;
        for (const auto& key : cls)
            if (net.species.contains(key)) seed.insert(key);
        if (!seed.empty()) starts.push_back(seed);
    }

    for (const auto& start : starts) {
        auto fixed = prune_to_self_maintaining(start, net, externally_produced);
        if (fixed.empty()) continue;
        if (!is_closed(fixed, net)) continue;
        if (std::find(report.level1.begin(), report.level1.end(), fixed) ==
            report.level1.end())
            report.level1.push_back(fixed);
    }
    std::sort(report.level1.begin(), report.level1.end());

    for (std::size_t i = 0; i < report.level1.size(); ++i) {
        for (std::size_t j = i + 1; j < report.level1.size(); ++j) {
            const auto& s1 = report.level1[i];
            const auto& s2 = report.level1[j];
            const bool disjoint =
                std::none_of(s1.begin(), s1.end(),
                             [&](const std::string& k) { return s2.contains(k); });
            if (!disjoint) continue;
            if (cross_supported(s1, s2, net) && cross_supported(s2, s1, net))
                report.level2.emplace_back(s1, s2);
        }
    }
    return report;
}

std::vector<std::vector<std::string>> detect_hypercycles(
    const ReactionNetwork& net, const HypercycleOptions& options) {
    // catalysis digraph: u -> v iff u is a reactant of a reaction producing v
    // with v not among that reaction's reactants
    std::map<std::string, std::set<std::string>> edges;
    for (const auto& [reaction, count] : net.reactions) {
        for (const auto& [u, nu] : reaction.reactants)
            for (const auto& [v, nv] : reaction.products)
                if (!reaction.reactants.contains(v)) edges[u].insert(v);
    }

    std::vector<std::vector<std::string>> cycles;
    std::vector<std::string> nodes(net.species.begin(), net.species.end());

    // Each elementary cycle is reported once, rooted at its smallest node;
    // the DFS only walks nodes greater than the root.
    for (const auto& root : nodes) {
        if (cycles.size() >= options.max_cycles) break;
        std::vector<std::string> path{root};
        std::set<std::string> on_path{root};
        auto dfs = [&](auto&& self, const std::string& node) -> void {
            if (cycles.size() >= options.max_cycles) return;
            auto it = edges.find(node);
            if (it == edges.end()) return;
            for (const auto& next : it->second) {
                if (cycles.size() >= options.max_cycles) return;
                if (next == root && path.size() >= 2) {
                    cycles.push_back(path);
                    continue;
                }
                if (next <= root || on_path.contains(next)) continue;
                if (static_cast<int>(path.size()) >= options.max_length) continue;
                path.push_back(next);
                on_path.insert(next);
                self(self, next);
                path.pop_back();
                on_path.erase(next);
            }
        };
        dfs(dfs, root);
    }
    return cycles;
}

}  // namespace protolife::org
