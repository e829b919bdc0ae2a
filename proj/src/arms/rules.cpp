#include "protolife/arms/rules.hpp"

#include <algorithm>
#include <cmath>

#include "protolife/errors.hpp"

namespace protolife::arms {

RuleClass classify_rule(const ArmsRule& rule) {
    if (rule.lhs.total() < rule.rhs.total()) return RuleClass::Heating;
    if (rule.lhs.total() > rule.rhs.total()) return RuleClass::Cooling;
    return RuleClass::Neutral;
}

double order_parameter(const std::vector<ArmsRule>& rules) {
    std::int64_t heating = 0, cooling = 0;
    for (const auto& rule : rules) {
        switch (classify_rule(rule)) {
            case RuleClass::Heating: ++heating; break;
            case RuleClass::Cooling: ++cooling; break;
            case RuleClass::Neutral: break;
        }
    }
    if (heating + cooling == 0)
        throw DegenerateRuleset("order parameter undefined: all rules are neutral");
    return static_cast<double>(heating) / static_cast<double>(heating + cooling);
}

std::optional<SymbolMultiset> apply_rule(const SymbolMultiset& state,
                                         const ArmsRule& rule) {
    if (!state.includes(rule.lhs)) return std::nullopt;
    return state.minus(rule.lhs).plus(rule.rhs);
}

namespace {

std::string alphabet_symbol(std::uint64_t index) {
    return "s" + std::to_string(index);
}

SymbolMultiset random_side(Rng& rng, int size, int alphabet_size) {
    SymbolMultiset side;
    for (int i = 0; i < size; ++i)
        side.add(alphabet_symbol(rng.bounded(static_cast<std::uint64_t>(alphabet_size))));
    return side;
}

}  // namespace

std::vector<ArmsRule> random_ruleset(Rng& rng, const RulesetParams& params) {
    if (params.n_rules < 1) throw ConfigError("random_ruleset: n_rules must be >= 1");
    if (params.alphabet_size < 1)
        throw ConfigError("random_ruleset: alphabet_size must be >= 1");
    if (params.max_side_size < 1)
        throw ConfigError("random_ruleset: max_side_size must be >= 1");
    if (params.target_order_parameter < 0.0 || params.target_order_parameter > 1.0)
        throw ConfigError("random_ruleset: target_order_parameter must be in [0,1]");

    const int n = params.n_rules;
    const int n_heating = static_cast<int>(
        std::llround(params.target_order_parameter * static_cast<double>(n)));
    if (n_heating > 0 && params.max_side_size < 2)
        throw ConfigError(
            "random_ruleset: heating rules unreachable with max_side_size=1");

    std::vector<bool> heats(static_cast<std::size_t>(n), false);
    std::fill(heats.begin(), heats.begin() + n_heating, true);
    // Fisher-Yates so rule ranks are uncorrelated with their class.
    for (int i = n - 1; i > 0; --i) {
        const auto j = rng.bounded(static_cast<std::uint64_t>(i + 1));
        std::swap(heats[static_cast<std::size_t>(i)], heats[j]);
    }

    std::vector<ArmsRule> rules;
    rules.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ArmsRule rule;
        rule.rank = i;
        if (heats[static_cast<std::size_t>(i)]) {
            const int lhs_size =
                1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(params.max_side_size - 1)));
            const int rhs_size =
                lhs_size + 1 +
                static_cast<int>(rng.bounded(static_cast<std::uint64_t>(params.max_side_size - lhs_size)));
            rule.lhs = random_side(rng, lhs_size, params.alphabet_size);
            rule.rhs = random_side(rng, rhs_size, params.alphabet_size);
        } else {
            const int lhs_size =
                1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(params.max_side_size)));
            const int rhs_size =
                static_cast<int>(rng.bounded(static_cast<std::uint64_t>(lhs_size)));
            rule.lhs = random_side(rng, lhs_size, params.alphabet_size);
            rule.rhs = random_side(rng, rhs_size, params.alphabet_size);
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<ArmsRule> parse_ruleset(std::string_view text) {
    std::vector<ArmsRule> rules;
    std::size_t line_start = 0;
    int rank = 0;
    std::size_t line_no = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        const bool blank = std::all_of(line.begin(), line.end(), [](char c) {
            return std::isspace(static_cast<unsigned char>(c));
        });
        if (!blank) {
            const std::size_t arrow = line.find("->");
            if (arrow == std::string_view::npos)
                throw SyntaxError("rule line " + std::to_string(line_no) +
                                      " lacks '->'",
                                  line_start);
            ArmsRule rule;
            rule.lhs = parse_multiset(line.substr(0, arrow));
            rule.rhs = parse_multiset(line.substr(arrow + 2));
            rule.rank = rank++;
            if (rule.lhs.empty())
                throw SyntaxError("rule line " + std::to_string(line_no) +
                                      " has empty left-hand side",
                                  line_start);
            rules.push_back(std::move(rule));
        }
        if (line_end == text.size()) break;
        line_start = line_end + 1;
    }
    return rules;
}

std::string format_ruleset(const std::vector<ArmsRule>& rules) {
    std::string out;
    for (const auto& rule : rules) {
        out += rule.lhs.to_text();
        out += " ->";
        const std::string rhs = rule.rhs.to_text();
        if (!rhs.empty()) {
            out += ' ';
            out += rhs;
        }
        out += '\n';
    }
    return out;
}

}  // namespace protolife::arms
