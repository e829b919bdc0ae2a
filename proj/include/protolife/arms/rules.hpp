#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "protolife/arms/multiset.hpp"
#include "protolife/rng.hpp"

namespace protolife::arms {

// Rewriting rule lhs -> rhs; lower rank is tried first.
struct ArmsRule {
    SymbolMultiset lhs;  // nonempty
    SymbolMultiset rhs;  // may be empty
    int rank = 0;
};

enum class RuleClass { Heating, Cooling, Neutral };

// Heating grows the multiset (|lhs| < |rhs|), cooling shrinks it.
RuleClass classify_rule(const ArmsRule& rule);

// N_heating / (N_heating + N_cooling); throws DegenerateRuleset when every
// rule is neutral.
double order_parameter(const std::vector<ArmsRule>& rules);

// state - lhs + rhs if lhs is included in state.
std::optional<SymbolMultiset> apply_rule(const SymbolMultiset& state,
                                         const ArmsRule& rule);

struct RulesetParams {
    int n_rules = 8;
    int alphabet_size = 4;   // symbols s0 .. s{k-1}
    int max_side_size = 3;   // lhs in [1, max], rhs in [0, max]
    double target_order_parameter = 0.5;
};

// Random non-neutral rules whose heating fraction is round(target * n)/n,
// within 1/n_rules of the target; ranks are a random permutation of 0..n-1.
// Throws ConfigError when the target needs heating rules but max_side_size < 2.
std::vector<ArmsRule> random_ruleset(Rng& rng, const RulesetParams& params);

// One rule per line, "a b -> c"; blank lines and '#' comments are skipped.
// Rank is the order of appearance.
std::vector<ArmsRule> parse_ruleset(std::string_view text);
std::string format_ruleset(const std::vector<ArmsRule>& rules);

}  // namespace protolife::arms
