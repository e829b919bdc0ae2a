#include "protolife/lambda/term.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>
#include <utility>
#include <vector>

#include "protolife/errors.hpp"

namespace protolife::lambda {

Term Term::var(std::string name) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Var;
    node->name = std::move(name);
    node->size = 1;
    return Term(std::move(node));
}

Term Term::abs(std::string binder, Term body) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Abs;
    node->name = std::move(binder);
    node->left = std::move(body.node_);
    node->size = 1 + node->left->size;
    return Term(std::move(node));
}

Term Term::app(Term fn, Term arg) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::App;
    node->left = std::move(fn.node_);
    node->right = std::move(arg.node_);
    node->size = 1 + node->left->size + node->right->size;
    return Term(std::move(node));
}

bool valid_identifier(std::string_view name) {
    if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    });
}

namespace {

// Binder environments for alpha-equivalence: a bound variable is identified by
// the de Bruijn-style index of its binder.
struct BinderEnv {
    std::vector<std::string> binders;

    std::optional<int> index_of(const std::string& name) const {
        for (int i = static_cast<int>(binders.size()) - 1; i >= 0; --i) {
            if (binders[static_cast<std::size_t>(i)] == name) return i;
        }
        return std::nullopt;
    }
};

bool alpha_equal(const Term& a, const Term& b, BinderEnv& ea, BinderEnv& eb) {
    if (a.same_node(b) && ea.binders.empty() && eb.binders.empty()) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Term::Kind::Var: {
            const auto ia = ea.index_of(a.name());
            const auto ib = eb.index_of(b.name());
            if (ia.has_value() != ib.has_value()) return false;
            if (ia.has_value()) return *ia == *ib;
            return a.name() == b.name();
        }
        case Term::Kind::Abs: {
            ea.binders.push_back(a.name());
            eb.binders.push_back(b.name());
            const bool eq = alpha_equal(a.body(), b.body(), ea, eb);
            ea.binders.pop_back();
            eb.binders.pop_back();
            return eq;
        }
        case Term::Kind::App:
            return alpha_equal(a.fn(), b.fn(), ea, eb) &&
                   alpha_equal(a.arg(), b.arg(), ea, eb);
    }
    return false;
}

}  // namespace

bool Term::operator==(const Term& other) const {
    BinderEnv ea, eb;
    return alpha_equal(*this, other, ea, eb);
}

namespace {

constexpr std::string_view kLambdaUtf8 = "\xce\xbb";

void print_into(const Term& t, std::string& out) {
    switch (t.kind()) {
        case Term::Kind::Var:
            out += t.name();
            break;
        case Term::Kind::Abs:
            out += kLambdaUtf8;
            out += t.name();
            out += '.';
            print_into(t.body(), out);
            break;
        case Term::Kind::App:
            out += '(';
            print_into(t.fn(), out);
            out += ')';
            print_into(t.arg(), out);
            break;
    }
}

void collect_names(const Term& t, std::unordered_set<std::string>& names) {
    switch (t.kind()) {
        case Term::Kind::Var:
            names.insert(t.name());
            break;
        case Term::Kind::Abs:
            names.insert(t.name());
            collect_names(t.body(), names);
            break;
        case Term::Kind::App:
            collect_names(t.fn(), names);
            collect_names(t.arg(), names);
            break;
    }
}

void free_vars_into(const Term& t, std::vector<std::string>& bound,
                    std::set<std::string>& out) {
    switch (t.kind()) {
        case Term::Kind::Var:
            if (std::find(bound.begin(), bound.end(), t.name()) == bound.end())
                out.insert(t.name());
            break;
        case Term::Kind::Abs:
            bound.push_back(t.name());
            free_vars_into(t.body(), bound, out);
            bound.pop_back();
            break;
        case Term::Kind::App:
            free_vars_into(t.fn(), bound, out);
            free_vars_into(t.arg(), bound, out);
            break;
    }
}

}  // namespace

std::string to_string(const Term& term) {
    std::string out;
    out.reserve(static_cast<std::size_t>(term.size()) * 3);
    print_into(term, out);
    return out;
}

std::set<std::string> free_vars(const Term& term) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    free_vars_into(term, bound, out);
    return out;
}

std::string fresh_name(const Term& term) {
    std::unordered_set<std::string> used;
    collect_names(term, used);
    for (int i = 0;; ++i) {
        std::string candidate = "v" + std::to_string(i);
        if (!used.contains(candidate)) return candidate;
    }
}

namespace {

struct Canonicalizer {
    const std::set<std::string>& avoid;  // free names of the whole term
    int next = 0;
    std::string out;

    std::string next_binder() {
        for (;;) {
            std::string candidate = "v" + std::to_string(next++);
            if (!avoid.contains(candidate)) return candidate;
        }
    }

    void emit(const Term& t, std::vector<std::pair<std::string, std::string>>& env) {
        switch (t.kind()) {
            case Term::Kind::Var: {
                for (auto it = env.rbegin(); it != env.rend(); ++it) {
                    if (it->first == t.name()) {
                        out += it->second;
                        return;
                    }
                }
                out += t.name();
                return;
            }
            case Term::Kind::Abs: {
                std::string fresh = next_binder();
                out += kLambdaUtf8;
                out += fresh;
                out += '.';
                env.emplace_back(t.name(), fresh);
                emit(t.body(), env);
                env.pop_back();
                return;
            }
            case Term::Kind::App:
                out += '(';
                emit(t.fn(), env);
                out += ')';
                emit(t.arg(), env);
                return;
        }
    }
};

}  // namespace

std::string canonical_key(const Term& term) {
    const auto free = free_vars(term);
    Canonicalizer canon{free, 0, {}};
    canon.out.reserve(static_cast<std::size_t>(term.size()) * 3);
    std::vector<std::pair<std::string, std::string>> env;
    canon.emit(term, env);
    return canon.out;
}

namespace {

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    Term run() {
        Term t = parse_term();
        skip_ws();
        if (pos_ != text_.size())
            throw SyntaxError("unexpected trailing input", pos_);
        return t;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_lambda() const {
        if (pos_ < text_.size() && text_[pos_] == '\\') return true;
        return pos_ + 1 < text_.size() && text_[pos_] == '\xce' &&
               text_[pos_ + 1] == '\xbb';
    }

    void consume_lambda() {
        pos_ += (text_[pos_] == '\\') ? 1 : 2;
    }

    std::string parse_identifier() {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] < 'a' || text_[pos_] > 'z')
            throw SyntaxError("expected identifier", pos_);
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
                (text_[pos_] >= '0' && text_[pos_] <= '9')))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Term parse_term() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("expected term", pos_);
        if (at_lambda()) {
            consume_lambda();
            std::string binder = parse_identifier();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != '.')
                throw SyntaxError("expected '.' after binder", pos_);
            ++pos_;
            return Term::abs(std::move(binder), parse_term());
        }
        if (text_[pos_] == '(') {
            ++pos_;
            Term fn = parse_term();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                throw SyntaxError("expected ')'", pos_);
            ++pos_;
            Term arg = parse_term();
            return Term::app(std::move(fn), std::move(arg));
        }
        return Term::var(parse_identifier());
    }
};

}  // namespace

Term parse(std::string_view text) { return Parser(text).run(); }

}  // namespace protolife::lambda
