#include "protolife/lambda/collision.hpp"

namespace protolife::lambda {

CollisionLaw default_collision_law() {
    Term phi = Term::abs(
        "x", Term::abs("y", Term::app(Term::var("x"), Term::var("y"))));
    return CollisionLaw{std::move(phi), ReductionBudget{}};
}

std::optional<Term> collide(const Term& a, const Term& b,
                            const CollisionLaw& law) {
    if (!law.phi.is_abs()) return std::nullopt;
    if (law.require_abstraction_operator && !a.is_abs()) return std::nullopt;
    const Term combined = Term::app(Term::app(law.phi, a), b);
    ReductionResult result = normal_form(combined, law.budget);
    if (result.exhausted) return std::nullopt;
    if (law.reject_variable_products && result.term.is_var()) return std::nullopt;
    return result.term;
}

}  // namespace protolife::lambda
