#include "protolife/lambda/reduce.hpp"

#include "protolife/errors.hpp"

namespace protolife::lambda {

namespace {

bool occurs_free(const Term& t, const std::string& name) {
    switch (t.kind()) {
        case Term::Kind::Var:
            return t.name() == name;
        case Term::Kind::Abs:
            return t.name() != name && occurs_free(t.body(), name);
        case Term::Kind::App:
            return occurs_free(t.fn(), name) || occurs_free(t.arg(), name);
    }
    return false;
}

// Rewrites the redex (λx.B)Q. `whole` is the full term, used only to pick a
// fresh name for the capture-avoiding rename.
Term apply_rules(const std::string& x, const Term& body, const Term& q,
                 const Term& whole) {
    switch (body.kind()) {
        case Term::Kind::Var:
            if (body.name() == x) return q;  // identity
            return body;                     // discard, x ∉ f(body)
        case Term::Kind::Abs: {
            if (!occurs_free(body, x)) return body;  // discard (covers x == binder)
            const std::string& y = body.name();
            Term inner_body = body.body();
            if (!occurs_free(q, y)) {
                // push under binder: λy.(λx.E)Q
                return Term::abs(y, Term::app(Term::abs(x, inner_body), q));
            }
            // rename before pushing: λy.E → λz.(λy.E)z, the rename is the step
            std::string z = fresh_name(whole);
            Term renamed =
                Term::abs(z, Term::app(Term::abs(y, inner_body), Term::var(z)));
            return Term::app(Term::abs(x, renamed), q);
        }
        case Term::Kind::App: {
            if (!occurs_free(body, x)) return body;  // discard
            // distribute: ((λx.E1)Q)(λx.E2)Q
            return Term::app(Term::app(Term::abs(x, body.fn()), q),
                             Term::app(Term::abs(x, body.arg()), q));
        }
    }
    return body;
}

// Leftmost-innermost: function subtree, then argument subtree, then the node
// itself. Inner pending applications finish before an enclosing one is
// distributed again; selecting the outermost redex instead makes the
// distribute rule rip apart unfinished inner applications and grow the term
// exponentially even on terms as small as ((λx.λy.(x)y)λu.u)λv.v.
std::optional<Term> step_at(const Term& t, const Term& whole) {
    switch (t.kind()) {
        case Term::Kind::Var:
            return std::nullopt;
        case Term::Kind::Abs: {
            auto body = step_at(t.body(), whole);
            if (body) return Term::abs(t.name(), std::move(*body));
            return std::nullopt;
        }
        case Term::Kind::App: {
            auto fn = step_at(t.fn(), whole);
            if (fn) return Term::app(std::move(*fn), t.arg());
            auto arg = step_at(t.arg(), whole);
            if (arg) return Term::app(t.fn(), std::move(*arg));
            if (t.fn().is_abs())
                return apply_rules(t.fn().name(), t.fn().body(), t.arg(), whole);
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Term> rewrite_step(const Term& term) {
    return step_at(term, term);
}

bool has_redex(const Term& term) {
    switch (term.kind()) {
        case Term::Kind::Var:
            return false;
        case Term::Kind::Abs:
            return has_redex(term.body());
        case Term::Kind::App:
            return term.fn().is_abs() || has_redex(term.fn()) ||
                   has_redex(term.arg());
    }
    return false;
}

ReductionResult normal_form(const Term& term, const ReductionBudget& budget) {
    if (budget.max_steps <= 0 || budget.max_nodes <= 0)
        throw ConfigError("reduction budget must be strictly positive");
    Term current = term;
    int steps = 0;
    for (;;) {
        auto next = rewrite_step(current);
        if (!next) return {current, steps, false};
        if (steps == budget.max_steps) return {current, steps, true};
        current = std::move(*next);
        ++steps;
        if (current.size() > budget.max_nodes) return {current, steps, true};
    }
}

}  // namespace protolife::lambda
