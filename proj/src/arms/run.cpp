#include "protolife/arms/run.hpp"

#include <cstdio>
#include <unordered_map>

#include "protolife/errors.hpp"

namespace protolife::arms {

std::optional<std::pair<SymbolMultiset, int>> step(
    const SymbolMultiset& state, const std::vector<ArmsRule>& rules,
    const StepOptions& options, Rng* rng) {
    if (!options.stochastic_rule_choice) {
        for (const auto& rule : rules) {
            if (auto next = apply_rule(state, rule))
                return std::make_pair(std::move(*next), rule.rank);
        }
        return std::nullopt;
    }
    std::vector<const ArmsRule*> applicable;
    for (const auto& rule : rules)
        if (state.includes(rule.lhs)) applicable.push_back(&rule);
    if (applicable.empty()) return std::nullopt;
    if (rng == nullptr)
        throw ConfigError("stochastic rule choice requires an RNG");
    const auto& rule = *applicable[rng->bounded(applicable.size())];
    return std::make_pair(*apply_rule(state, rule), rule.rank);
}

ArmsTrajectory run_arms(const SymbolMultiset& initial,
                        const std::vector<ArmsRule>& rules, std::size_t max_steps,
                        const StepOptions& options, Rng* rng) {
    if (max_steps < 1) throw ConfigError("run_arms: max_steps must be >= 1");
    ArmsTrajectory trajectory;
    trajectory.states.push_back(initial);
    std::unordered_map<std::string, std::size_t> first_seen;
    first_seen.emplace(initial.key(), 0);

    for (std::size_t t = 0; t < max_steps; ++t) {
        auto next = step(trajectory.states.back(), rules, options, rng);
        if (!next) {
            trajectory.outcome = ArmsTrajectory::Outcome::Terminated;
            return trajectory;
        }
        trajectory.states.push_back(std::move(next->first));
        const std::size_t here = trajectory.states.size() - 1;
        auto [it, inserted] = first_seen.emplace(trajectory.states.back().key(), here);
        if (!inserted) {
            // confirm the hash hit with exact multiset equality
            if (trajectory.states[it->second] == trajectory.states.back()) {
                trajectory.outcome = ArmsTrajectory::Outcome::Cycle;
                trajectory.entry_index = it->second;
                trajectory.period = here - it->second;
                return trajectory;
            }
        }
    }
    trajectory.outcome = ArmsTrajectory::Outcome::BudgetExhausted;
    return trajectory;
}

namespace {

SymbolMultiset random_state(Rng& rng, int size, int alphabet_size) {
    SymbolMultiset state;
    for (int i = 0; i < size; ++i)
        state.add("s" + std::to_string(rng.bounded(static_cast<std::uint64_t>(alphabet_size))));
    return state;
}

}  // namespace

std::vector<SweepRow> sweep(std::uint64_t seed, const std::vector<double>& grid,
                            int runs_per_point, const SweepRunParams& params) {
    if (grid.empty()) throw ConfigError("sweep: grid must be nonempty");
    if (runs_per_point < 1) throw ConfigError("sweep: runs_per_point must be >= 1");

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        SweepRow row;
        row.target = grid[gi];
        int cycling = 0, terminated = 0, exhausted = 0;
        for (int ri = 0; ri < runs_per_point; ++ri) {
            Rng rng(derive_seed(seed, gi, static_cast<std::uint64_t>(ri)));
            RulesetParams ruleset_params = params.ruleset;
            ruleset_params.target_order_parameter = grid[gi];
            const auto rules = random_ruleset(rng, ruleset_params);
            const auto initial =
                random_state(rng, params.initial_size, ruleset_params.alphabet_size);
            StepOptions options;
            options.stochastic_rule_choice = params.stochastic_rule_choice;
            const auto trajectory =
                run_arms(initial, rules, params.max_steps, options, &rng);
            switch (trajectory.outcome) {
                case ArmsTrajectory::Outcome::Cycle: ++cycling; break;
                case ArmsTrajectory::Outcome::Terminated: ++terminated; break;
                case ArmsTrajectory::Outcome::BudgetExhausted: ++exhausted; break;
            }
        }
        const double n = static_cast<double>(runs_per_point);
        row.fraction_cycling = cycling / n;
        row.fraction_terminated = terminated / n;
        row.fraction_exhausted = exhausted / n;
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "target,cycling,terminated,exhausted\n";
    char buf[160];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", row.target,
                      row.fraction_cycling, row.fraction_terminated,
                      row.fraction_exhausted);
        out += buf;
    }
    return out;
}

}  // namespace protolife::arms
