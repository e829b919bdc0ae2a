#pragma once

#include <optional>

#include "protolife/lambda/term.hpp"

namespace protolife::lambda {

struct ReductionBudget {
    int max_steps = 10000;
    int max_nodes = 100000;
};

struct ReductionResult {
    Term term;
    int steps_used = 0;
    // True iff max_steps was hit with a redex remaining or the term outgrew
    // max_nodes mid-reduction.
    bool exhausted = false;
};

// One leftmost-innermost application of the oriented substitution rules:
//   (λx.x)Q        → Q                                  (identity)
//   (λx.E)Q        → E             if x ∉ f(E)          (discard)
//   (λx.λy.E)Q     → λy.(λx.E)Q    if x ≠ y and y ∉ f(Q) (push under binder)
//   (λx.(E1)E2)Q   → ((λx.E1)Q)(λx.E2)Q                 (distribute)
// When the push-under-binder case would capture (x ∈ f(E) and y ∈ f(Q)), the
// inner abstraction is first renamed, λy.E → λz.(λy.E)z with z fresh for the
// whole term, and that renaming is the step. Returns nullopt on normal forms.
std::optional<Term> rewrite_step(const Term& term);

bool has_redex(const Term& term);

// Iterates rewrite_step until normal form or budget exhaustion. Deterministic.
ReductionResult normal_form(const Term& term, const ReductionBudget& budget);

}  // namespace protolife::lambda
