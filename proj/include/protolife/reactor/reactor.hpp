#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <utility>

#include "protolife/errors.hpp"
#include "protolife/reactor/event.hpp"
#include "protolife/reactor/population.hpp"
#include "protolife/rng.hpp"

namespace protolife::reactor {

struct OutflowPolicy {
    enum class Kind { None, ConstantPopulation, Rate };
    Kind kind = Kind::None;
    double rate = 0.0;  // per-step removal probability for Kind::Rate
};

struct EngineOptions {
    std::int64_t max_steps = 1000;
    OutflowPolicy outflow;
    // Keep the drawn reactant order (both orientations equally likely). When
    // false, reactants are oriented by ascending species key before reacting.
    bool symmetric_collisions = true;
    bool track_instances = false;
    std::int64_t sample_every = 100;
};

// Uniform unordered pair of distinct indices in [0, n), returned in draw
// order; a species can meet itself only through two distinct instances.
inline std::pair<std::size_t, std::size_t> sample_pair(std::size_t n, Rng& rng) {
    const std::size_t first = rng.bounded(n);
    std::size_t second = rng.bounded(n - 1);
    if (second >= first) ++second;
    return {first, second};
}

// What one step did; records are already applied to the population.
struct StepRecords {
    std::optional<ReactionEvent> event;
    std::optional<RemovalRecord> discard;
    std::optional<RemovalRecord> outflow;
    bool halted = false;  // unary chemistry found no applicable rule
};

namespace detail {

template <class Molecule>
void apply_outflow(Population<Molecule>& pop, const OutflowPolicy& policy,
                   std::size_t target_size, std::int64_t t, Rng& rng,
                   StepRecords& records) {
    RemovalRecord removal;
    removal.t = t;
    removal.kind = RemovalRecord::Kind::Outflow;
    switch (policy.kind) {
        case OutflowPolicy::Kind::None:
            return;
        case OutflowPolicy::Kind::ConstantPopulation:
            while (pop.total() > target_size) {
                const std::size_t victim = rng.bounded(pop.total());
                removal.keys.push_back(pop.key_of(victim));
                pop.remove_at(victim);
            }
            break;
        case OutflowPolicy::Kind::Rate:
            if (pop.total() > 0 && rng.unit_real() < policy.rate) {
                const std::size_t victim = rng.bounded(pop.total());
                removal.keys.push_back(pop.key_of(victim));
                pop.remove_at(victim);
            }
            break;
    }
    if (!removal.keys.empty()) records.outflow = std::move(removal);
}

}  // namespace detail

// One collision of a binary chemistry: draw an unordered pair, react, apply
// retention/discard bookkeeping and the outflow policy.
template <class Chem>
    requires(Chem::arity == 2)
StepRecords reactor_step(Population<typename Chem::Molecule>& pop, const Chem& chem,
                         const EngineOptions& options, std::int64_t t,
                         std::size_t target_size, std::int64_t& next_id, Rng& rng) {
    if (pop.total() < 2)
        throw PopulationUnderflow("reactor needs at least 2 molecules, has " +
                                  std::to_string(pop.total()));
    auto [first, second] = sample_pair(pop.total(), rng);
    if (!options.symmetric_collisions && pop.key_of(second) < pop.key_of(first))
        std::swap(first, second);

    StepRecords records;
    const auto products = chem.react(pop.molecule_of(first), pop.molecule_of(second), rng);

    if (products.empty()) {
        if (chem.discard_on_failure()) {
            RemovalRecord discard;
            discard.t = t;
            discard.kind = RemovalRecord::Kind::Discard;
            discard.keys = {pop.key_of(first), pop.key_of(second)};
            pop.remove_at(std::max(first, second));
            pop.remove_at(std::min(first, second));
            records.discard = std::move(discard);
        }
        detail::apply_outflow(pop, options.outflow, target_size, t, rng, records);
        return records;
    }

    ReactionEvent event;
    event.t = t;
    event.reactant_keys = {pop.key_of(first), pop.key_of(second)};
    event.has_instance_ids = options.track_instances;
    if (options.track_instances)
        event.reactant_ids = {pop.at(first).id, pop.at(second).id};

    if (chem.retain_reactants()) {
        // reactants pass through as non-new products
        event.product_keys = event.reactant_keys;
        event.new_flags = {false, false};
        if (options.track_instances) event.product_ids = event.reactant_ids;
    } else {
        pop.remove_at(std::max(first, second));
        pop.remove_at(std::min(first, second));
    }
    for (const auto& molecule : products) {
        const std::string key = chem.species_key(molecule);
        const auto species = pop.intern(key, molecule);
        const std::int64_t id = options.track_instances ? next_id++ : 0;
        pop.add(species, id);
        event.product_keys.push_back(key);
        event.new_flags.push_back(true);
        if (options.track_instances) event.product_ids.push_back(id);
    }
    records.event = std::move(event);
    detail::apply_outflow(pop, options.outflow, target_size, t, rng, records);
    return records;
}

// One step of a unary chemistry (the whole-state adapter): the single
// molecule is rewritten in place; halting sets `halted`.
template <class Chem>
    requires(Chem::arity == 1)
StepRecords reactor_step(Population<typename Chem::Molecule>& pop, const Chem& chem,
                         const EngineOptions& options, std::int64_t t,
                         std::size_t /*target_size*/, std::int64_t& next_id, Rng& rng) {
    if (pop.total() < 1)
        throw PopulationUnderflow("unary reactor needs a molecule");
    StepRecords records;
    auto next = chem.react1(pop.molecule_of(0), rng);
    if (!next) {
        records.halted = true;
        return records;
    }
    ReactionEvent event;
    event.t = t;
    event.reactant_keys = {pop.key_of(0)};
    event.has_instance_ids = options.track_instances;
    if (options.track_instances) event.reactant_ids = {pop.at(0).id};

    const std::string key = chem.species_key(*next);
    const auto species = pop.intern(key, *next);
    pop.remove_at(0);
    const std::int64_t id = options.track_instances ? next_id++ : 0;
    pop.add(species, id);
    event.product_keys = {key};
    event.new_flags = {true};
    if (options.track_instances) event.product_ids = {id};
    records.event = std::move(event);
    return records;
}

struct RunResult {
    // "completed" (ran max_steps), "underflow" (too few molecules to collide),
    // or "terminated" (unary chemistry halted)
    std::string outcome;
    std::int64_t steps_executed = 0;
    std::int64_t events_emitted = 0;
};

namespace detail {

template <class Molecule>
void sample_timeseries(std::ostream* sink, std::int64_t t,
                       const Population<Molecule>& pop) {
    if (sink == nullptr) return;
    for (const auto& [key, count] : pop.counts_map())
        (*sink) << t << ',' << key << ',' << count << '\n';
}

}  // namespace detail

// Executes up to options.max_steps collisions, streaming JSONL records and
// CSV population samples. Identical (population, options, seed) give
// byte-identical sinks.
template <class Chem>
RunResult run_reactor(Population<typename Chem::Molecule>& pop, const Chem& chem,
                      const EngineOptions& options, Rng& rng,
                      std::ostream* event_sink, std::ostream* timeseries_sink) {
    const std::size_t target_size = pop.total();
    std::int64_t next_id = static_cast<std::int64_t>(pop.total());
    RunResult result;
    detail::sample_timeseries(timeseries_sink, 0, pop);

    std::int64_t last_sampled = 0;
    for (std::int64_t t = 1; t <= options.max_steps; ++t) {
        if (Chem::arity == 2 && pop.total() < 2) {
            result.outcome = "underflow";
            return result;
        }
        const auto records =
            reactor_step(pop, chem, options, t, target_size, next_id, rng);
        if (records.halted) {
            result.outcome = "terminated";
            return result;
        }
        result.steps_executed = t;
        if (event_sink != nullptr) {
            if (records.event) (*event_sink) << to_jsonl(*records.event) << '\n';
            if (records.discard) (*event_sink) << to_jsonl(*records.discard) << '\n';
            if (records.outflow) (*event_sink) << to_jsonl(*records.outflow) << '\n';
        }
        if (records.event) ++result.events_emitted;
        if (options.sample_every > 0 && t % options.sample_every == 0) {
            detail::sample_timeseries(timeseries_sink, t, pop);
            last_sampled = t;
        }
    }
    if (last_sampled != options.max_steps)
        detail::sample_timeseries(timeseries_sink, options.max_steps, pop);
    result.outcome = "completed";
    return result;
}

}  // namespace protolife::reactor
