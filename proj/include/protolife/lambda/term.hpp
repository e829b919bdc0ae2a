#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace protolife::lambda {

// Immutable lambda term with shared subtrees. Copying a Term is O(1); rewrite
// steps rebuild only the spine above the redex. Identifiers match
// [a-z][a-z0-9]*.
class Term {
  public:
    enum class Kind : std::uint8_t { Var, Abs, App };

    static Term var(std::string name);
    static Term abs(std::string binder, Term body);
    static Term app(Term fn, Term arg);

    Kind kind() const { return node_->kind; }
    bool is_var() const { return node_->kind == Kind::Var; }
    bool is_abs() const { return node_->kind == Kind::Abs; }
    bool is_app() const { return node_->kind == Kind::App; }

    // Var name or Abs binder.
    const std::string& name() const { return node_->name; }
    Term body() const { return Term(node_->left); }   // Abs only
    Term fn() const { return Term(node_->left); }     // App only
    Term arg() const { return Term(node_->right); }   // App only

    int size() const { return node_->size; }

    // Alpha-equivalence (bound names irrelevant, free names compared literally).
    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }

    // Used for shared-subtree identity shortcuts.
    bool same_node(const Term& other) const { return node_ == other.node_; }

  private:
    struct Node {
        Kind kind;
        std::string name;                  // Var name / Abs binder
        std::shared_ptr<const Node> left;  // Abs body / App fn
        std::shared_ptr<const Node> right; // App arg
        int size;
    };
    using NodePtr = std::shared_ptr<const Node>;

    explicit Term(NodePtr node) : node_(std::move(node)) {}
    NodePtr node_;
};

// Grammar: term := var | ("λ" | "\") var "." term | "(" term ")" term
// Whitespace is ignored. Throws SyntaxError with the byte offset of the
// first offending byte. print(parse(s)) == s up to whitespace and the \ alias.
Term parse(std::string_view text);

// "λ" rendered as UTF-8.
std::string to_string(const Term& term);

std::set<std::string> free_vars(const Term& term);

// Printed form with binders renamed to v0, v1, ... in traversal order
// (skipping names that occur free), so alpha-equivalent terms map to the same
// string. Parses back to an alpha-equivalent term; used as the species key.
std::string canonical_key(const Term& term);

// First identifier of the form v0, v1, ... that occurs nowhere in `term`
// (free or bound).
std::string fresh_name(const Term& term);

bool valid_identifier(std::string_view name);

}  // namespace protolife::lambda
