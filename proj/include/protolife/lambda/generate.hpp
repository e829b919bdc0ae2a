#pragma once

#include "protolife/lambda/term.hpp"
#include "protolife/rng.hpp"

namespace protolife::lambda {

struct RandomTermParams {
    int max_depth = 6;
    int var_pool_size = 3;  // variable names x0 .. x{n-1}
    double p_var = 0.3;
    double p_abs = 0.35;
    double p_app = 0.35;
    // Wrap every free variable in a binding abstraction (sorted, outermost
    // first) so the result is closed.
    bool closed = false;
};

// Random term of depth <= max_depth; only variables at the depth limit.
// Throws ConfigError unless p_var + p_abs + p_app == 1 within 1e-9.
Term random_term(Rng& rng, const RandomTermParams& params);

}  // namespace protolife::lambda
