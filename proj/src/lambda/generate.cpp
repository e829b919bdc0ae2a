#include "protolife/lambda/generate.hpp"

#include <cmath>
#include <vector>

#include "protolife/errors.hpp"

namespace protolife::lambda {

namespace {

std::string pool_name(std::uint64_t index) {
    return "x" + std::to_string(index);
}

Term generate(Rng& rng, const RandomTermParams& p, int depth) {
    if (depth >= p.max_depth)
        return Term::var(pool_name(rng.bounded(static_cast<std::uint64_t>(p.var_pool_size))));
    const double roll = rng.unit_real();
    if (roll < p.p_var)
        return Term::var(pool_name(rng.bounded(static_cast<std::uint64_t>(p.var_pool_size))));
    if (roll < p.p_var + p.p_abs) {
        std::string binder =
            pool_name(rng.bounded(static_cast<std::uint64_t>(p.var_pool_size)));
        return Term::abs(std::move(binder), generate(rng, p, depth + 1));
    }
    Term fn = generate(rng, p, depth + 1);
    Term arg = generate(rng, p, depth + 1);
    return Term::app(std::move(fn), std::move(arg));
}

}  // namespace

Term random_term(Rng& rng, const RandomTermParams& params) {
    if (params.max_depth < 0 || params.var_pool_size < 1)
        throw ConfigError("random_term: max_depth must be >= 0 and var_pool_size >= 1");
    if (std::abs(params.p_var + params.p_abs + params.p_app - 1.0) > 1e-9)
        throw ConfigError("random_term: p_var + p_abs + p_app must sum to 1");
    if (params.p_var < 0 || params.p_abs < 0 || params.p_app < 0)
        throw ConfigError("random_term: probabilities must be non-negative");
    Term t = generate(rng, params, 0);
    if (params.closed) {
        const auto free = free_vars(t);
        for (auto it = free.rbegin(); it != free.rend(); ++it)
            t = Term::abs(*it, std::move(t));
    }
    return t;
}

}  // namespace protolife::lambda
