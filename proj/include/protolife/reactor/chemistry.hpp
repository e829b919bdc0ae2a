#pragma once

#include <optional>
#include <string>
#include <vector>

#include "protolife/arms/run.hpp"
#include "protolife/lambda/collision.hpp"
#include "protolife/rng.hpp"
#include "protolife/tile/tile.hpp"

namespace protolife::reactor {

// Chemistries plug into the engine through a small static shape:
//   using Molecule = ...;  static constexpr int arity;
//   binary: std::vector<Molecule> react(a, b, rng) (empty = elastic),
//           retain_reactants(), discard_on_failure()
//   unary:  std::optional<Molecule> react1(m, rng) (nullopt = halt)
//   both:   std::string species_key(m)

// A + B -> A + B + nf(((Φ)A)B); reactants stay, elastic collisions leave the
// population untouched.
class AlchemyChemistry {
  public:
    using Molecule = lambda::Term;
    static constexpr int arity = 2;

    explicit AlchemyChemistry(lambda::CollisionLaw law) : law_(std::move(law)) {}

    std::vector<Molecule> react(const Molecule& a, const Molecule& b, Rng&) const {
        auto product = lambda::collide(a, b, law_);
        if (!product) return {};
        return {std::move(*product)};
    }
    bool retain_reactants() const { return true; }
    bool discard_on_failure() const { return false; }
    std::string species_key(const Molecule& m) const { return lambda::canonical_key(m); }

    const lambda::CollisionLaw& law() const { return law_; }

  private:
    lambda::CollisionLaw law_;
};

// Both colliding tiles are consumed: replaced by the joined tile when they
// fit, discarded outright when they do not.
class TileChemistry {
  public:
    using Molecule = tile::Tile;
    static constexpr int arity = 2;

    std::vector<Molecule> react(const Molecule& a, const Molecule& b, Rng& rng) const {
        auto product = tile::collide_tiles(a, b, rng);
        if (!product) return {};
        return {std::move(*product)};
    }
    bool retain_reactants() const { return false; }
    bool discard_on_failure() const { return true; }
    std::string species_key(const Molecule& m) const { return m.key(); }
};

// Whole multiset state as the single molecule; each reactor step applies one
// rewriting step. Halts when no rule applies.
class ArmsChemistry {
  public:
    using Molecule = arms::SymbolMultiset;
    static constexpr int arity = 1;

    ArmsChemistry(std::vector<arms::ArmsRule> rules, arms::StepOptions options)
        : rules_(std::move(rules)), options_(options) {}

    std::optional<Molecule> react1(const Molecule& state, Rng& rng) const {
        auto next = arms::step(state, rules_, options_, &rng);
        if (!next) return std::nullopt;
        return std::move(next->first);
    }
    std::string species_key(const Molecule& m) const { return m.key(); }

    const std::vector<arms::ArmsRule>& rules() const { return rules_; }

  private:
    std::vector<arms::ArmsRule> rules_;
    arms::StepOptions options_;
};

}  // namespace protolife::reactor
