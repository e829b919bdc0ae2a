#pragma once

#include <optional>

#include "protolife/lambda/reduce.hpp"
#include "protolife/lambda/term.hpp"

namespace protolife::lambda {

// Reactions compute nf(((Φ)A)B); Φ is fixed per reactor run.
struct CollisionLaw {
    Term phi;
    ReductionBudget budget;
    // Extra reactant filter: the operator molecule A itself must be an
    // abstraction (off by default; Φ is always required to be one).
    bool require_abstraction_operator = false;
    // Product filter: drop bare-variable results.
    bool reject_variable_products = true;
};

// Default Φ = λx.λy.(x)y, i.e. plain application of A to B.
CollisionLaw default_collision_law();

// nf(((Φ)a)b) when all filters pass and reduction completes within budget;
// nullopt marks an elastic collision.
std::optional<Term> collide(const Term& a, const Term& b, const CollisionLaw& law);

}  // namespace protolife::lambda
