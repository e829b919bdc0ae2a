#include <doctest.h>

#include <set>

#include "protolife/errors.hpp"
#include "protolife/lambda/collision.hpp"
#include "protolife/lambda/generate.hpp"
#include "protolife/lambda/reduce.hpp"
#include "protolife/lambda/term.hpp"
#include "protolife/rng.hpp"

using namespace protolife;
using namespace protolife::lambda;

namespace {
const char* kLam = "\xce\xbb";
std::string lam(const std::string& rest) { return kLam + rest; }
}  // namespace

TEST_SUITE("lambda") {

TEST_CASE("parse builds the unique tree") {
    Term id = parse("λx.x");
    CHECK(id.is_abs());
    CHECK(id.name() == "x");
    CHECK(id.body().is_var());
    CHECK(id.body().name() == "x");

    Term app = parse("(λx.x)y");
    CHECK(app.is_app());
    CHECK(app.fn().is_abs());
    CHECK(app.arg().is_var());
    CHECK(app.arg().name() == "y");
    CHECK(app.size() == 4);

    // backslash alias and whitespace
    CHECK(parse("\\x . x") == parse("λx.x"));
    // greedy argument: (x)(y)z groups as (x)((y)z)
    Term nested = parse("(x)(y)z");
    CHECK(nested.arg().is_app());
}

TEST_CASE("parse reports byte offsets") {
    CHECK_THROWS_AS(parse("\\x"), SyntaxError);
    try {
        parse("\\x");
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 2);  // missing dot
    }
    try {
        parse("λx");  // two-byte lambda shifts the offset
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 3);
    }
    CHECK_THROWS_AS(parse("(x)"), SyntaxError);   // application needs an argument
    CHECK_THROWS_AS(parse("λX.x"), SyntaxError);  // identifiers are lowercase
    CHECK_THROWS_AS(parse(""), SyntaxError);
    CHECK_THROWS_AS(parse("x y"), SyntaxError);  // trailing input
}

TEST_CASE("print and parse round-trip") {
    for (const char* text : {"x", "(x)y", "((x)y)z", "(x)(y)z"}) {
        CHECK(to_string(parse(text)) == text);
    }
    CHECK(to_string(parse("\\x.\\y.(x)y")) == lam("x.") + lam("y.(x)y"));
}

TEST_CASE("free variables") {
    CHECK(free_vars(parse("λx.x")).empty());
    CHECK(free_vars(parse("(x)λx.x")) == std::set<std::string>{"x"});
    CHECK(free_vars(parse("λx.(x)y")) == std::set<std::string>{"y"});
}

TEST_CASE("alpha-canonical equality") {
    CHECK(parse("λx.x") == parse("λy.y"));
    CHECK(parse("λx.λy.(x)y") == parse("λa.λb.(a)b"));
    CHECK(parse("λx.y") != parse("λx.z"));  // free names stay literal
    CHECK(parse("λx.x") != parse("λx.λy.y"));
    CHECK(canonical_key(parse("λx.x")) == lam("v0.v0"));
    CHECK(canonical_key(parse("λa.λb.(a)b")) == lam("v0.") + lam("v1.(v0)v1"));
    // canonical binders skip clashing free names
    CHECK(canonical_key(parse("λx.(x)v0")) == lam("v1.(v1)v0"));
    CHECK(parse(canonical_key(parse("λq.(q)v0"))) == parse("λq.(q)v0"));
}

TEST_CASE("rewrite rules match their schemas") {
    // identity
    CHECK(to_string(*rewrite_step(parse("(λx.x)y"))) == "y");
    // discard when the binder is not free in the body
    CHECK(to_string(*rewrite_step(parse("(λx.y)z"))) == "y");
    // push under binder
    CHECK(to_string(*rewrite_step(parse("(λx.λy.x)q"))) ==
          lam("y.(") + lam("x.x)q"));
    // distribute over application
    CHECK(to_string(*rewrite_step(parse("(λx.(x)x)q"))) ==
          "((" + lam("x.x)q)(") + lam("x.x)q"));
    // normal forms have no step
    CHECK(!rewrite_step(parse("λx.x")).has_value());
    CHECK(!rewrite_step(parse("(x)y")).has_value());
}

TEST_CASE("capture triggers the renaming rule") {
    // binder y occurs free in the argument, so the inner abstraction is
    // renamed first and that rename is the whole step
    Term stepped = *rewrite_step(parse("(λx.λy.(x)y)y"));
    CHECK(to_string(stepped) ==
          "(" + lam("x.") + lam("v0.(") + lam("y.(x)y)v0)y"));
}

TEST_CASE("redex selection is leftmost-innermost") {
    // the inner argument redex finishes before the enclosing application
    Term t = parse("(λx.y)(λz.z)w");
    REQUIRE(t.is_app());
    CHECK(to_string(*rewrite_step(t)) == "(" + lam("x.y)w"));
    auto r = normal_form(t, ReductionBudget{10, 1000});
    CHECK(to_string(r.term) == "y");
    CHECK(r.steps_used == 2);
}

TEST_CASE("normal_form examples") {
    ReductionBudget budget{100, 100000};
    auto r1 = normal_form(parse("(λx.λy.x)q"), budget);
    CHECK(to_string(r1.term) == lam("y.q"));
    CHECK(r1.steps_used == 2);
    CHECK(!r1.exhausted);

    auto omega = normal_form(parse("(λx.(x)x)λx.(x)x"), budget);
    CHECK(omega.exhausted);
    CHECK(omega.steps_used == 100);

    auto idle = normal_form(parse("λx.x"), ReductionBudget{1, 100000});
    CHECK(idle.steps_used == 0);
    CHECK(!idle.exhausted);
}

TEST_CASE("node budget stops runaway growth") {
    // triple self-application grows without bound
    auto r = normal_form(parse("(λx.((x)x)x)λx.((x)x)x"),
                         ReductionBudget{100000, 200});
    CHECK(r.exhausted);
    CHECK(r.steps_used < 1000);
    CHECK(r.term.size() > 200);
}

TEST_CASE("normal forms are idempotent and deterministic") {
    Rng rng(7);
    RandomTermParams params;
    params.max_depth = 5;
    params.closed = true;
    ReductionBudget budget{200, 2000};
    for (int i = 0; i < 200; ++i) {
        Term t = random_term(rng, params);
        auto r = normal_form(t, budget);
        auto again = normal_form(t, budget);
        CHECK(to_string(r.term) == to_string(again.term));
        CHECK(r.steps_used == again.steps_used);
        if (!r.exhausted) {
            CHECK(normal_form(r.term, budget).steps_used == 0);
            CHECK(!has_redex(r.term));
        }
    }
}

TEST_CASE("collision law composes and reduces") {
    CollisionLaw law = default_collision_law();
    auto product = collide(parse("λu.u"), parse("λv.v"), law);
    REQUIRE(product.has_value());
    CHECK(*product == parse("λv.v"));

    // Φ = λx.λy.x copies the first reactant
    CollisionLaw copier = law;
    copier.phi = parse("λx.λy.x");
    auto copy = collide(parse("λu.u"), parse("λw.(w)w"), copier);
    REQUIRE(copy.has_value());
    CHECK(*copy == parse("λu.u"));
}

TEST_CASE("collision filters make collisions elastic") {
    CollisionLaw law = default_collision_law();
    law.require_abstraction_operator = true;
    CHECK(!collide(parse("x"), parse("λv.v"), law).has_value());

    // divergent reduction exhausts the budget
    CollisionLaw tight = default_collision_law();
    tight.budget = ReductionBudget{200, 100000};
    CHECK(!collide(parse("λx.(x)x"), parse("λx.(x)x"), tight).has_value());

    // bare-variable products are rejected
    CollisionLaw to_var = default_collision_law();
    to_var.phi = parse("λx.λy.z");
    CHECK(!collide(parse("λu.u"), parse("λv.v"), to_var).has_value());
    to_var.reject_variable_products = false;
    auto z = collide(parse("λu.u"), parse("λv.v"), to_var);
    REQUIRE(z.has_value());
    CHECK(to_string(*z) == "z");
}

TEST_CASE("successful collisions add exactly one molecule worth of product") {
    // collision law arithmetic: A and B are untouched, one product appears
    CollisionLaw law = default_collision_law();
    Term a = parse("λu.λw.u");
    Term b = parse("λv.v");
    auto product = collide(a, b, law);
    REQUIRE(product.has_value());
    CHECK(*product == parse("λw.λv.v"));
}

TEST_CASE("random_term respects depth, seed, and closure") {
    RandomTermParams params;
    params.max_depth = 0;
    Rng rng(1);
    CHECK(random_term(rng, params).is_var());

    params.max_depth = 6;
    Rng r1(99), r2(99);
    CHECK(to_string(random_term(r1, params)) == to_string(random_term(r2, params)));

    params.closed = true;
    Rng r3(5);
    for (int i = 0; i < 50; ++i) CHECK(free_vars(random_term(r3, params)).empty());

    RandomTermParams bad;
    bad.p_var = 0.5;
    bad.p_abs = 0.5;
    bad.p_app = 0.5;
    Rng r4(1);
    CHECK_THROWS_AS(random_term(r4, bad), ConfigError);
}

}  // TEST_SUITE
