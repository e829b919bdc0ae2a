#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "protolife/arms/rules.hpp"
#include "protolife/rng.hpp"

namespace protolife::arms {

struct ArmsTrajectory {
    enum class Outcome { Terminated, Cycle, BudgetExhausted };

    std::vector<SymbolMultiset> states;  // states[0] is the initial state
    Outcome outcome = Outcome::Terminated;
    // Valid when outcome == Cycle: states[entry_index] == states[entry_index + period].
    std::size_t entry_index = 0;
    std::size_t period = 0;

    std::size_t steps() const { return states.size() - 1; }
};

struct StepOptions {
    // When set, picks uniformly among all applicable rules instead of the
    // lowest rank.
    bool stochastic_rule_choice = false;
};

// Applies the lowest-rank applicable rule (or a uniform choice when
// stochastic). `rules` must be sorted by rank. nullopt means termination.
std::optional<std::pair<SymbolMultiset, int>> step(const SymbolMultiset& state,
                                                   const std::vector<ArmsRule>& rules,
                                                   const StepOptions& options = {},
                                                   Rng* rng = nullptr);

// Iterates step, stopping at termination, the first state recurrence
// (confirmed by exact multiset equality after the hash hit), or max_steps.
ArmsTrajectory run_arms(const SymbolMultiset& initial,
                        const std::vector<ArmsRule>& rules, std::size_t max_steps,
                        const StepOptions& options = {}, Rng* rng = nullptr);

struct SweepRunParams {
    RulesetParams ruleset;       // target_order_parameter is overridden per grid point
    int initial_size = 8;
    std::size_t max_steps = 300;
    bool stochastic_rule_choice = false;
};

struct SweepRow {
    double target = 0.0;
    double fraction_cycling = 0.0;
    double fraction_terminated = 0.0;
    double fraction_exhausted = 0.0;
};

// For each grid target: runs_per_point random rulesets and initial states,
// each on an independent stream derived from (seed, grid index, run index).
std::vector<SweepRow> sweep(std::uint64_t seed, const std::vector<double>& grid,
                            int runs_per_point, const SweepRunParams& params);

// CSV with header target,cycling,terminated,exhausted.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace protolife::arms
