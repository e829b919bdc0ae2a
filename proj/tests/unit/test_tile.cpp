#include <doctest.h>

#include <set>
#include <vector>

#include "protolife/errors.hpp"
#include "protolife/rng.hpp"
#include "protolife/tile/tile.hpp"

using namespace protolife;
using namespace protolife::tile;

namespace {

// Independent placement oracle: re-derives the join predicate with plain set
// logic so the production enumeration has something to disagree with.
namespace oracle {

using CellSet = std::set<std::pair<int, int>>;

CellSet shift(const std::vector<Cell>& cells, int dx, int dy) {
    CellSet out;
    for (const Cell& c : cells) out.insert({c.x + dx, c.y + dy});
    return out;
}

bool edge_adjacent(const CellSet& a, const CellSet& b) {
    for (const auto& [x, y] : a)
        if (b.count({x + 1, y}) || b.count({x - 1, y}) || b.count({x, y + 1}) ||
            b.count({x, y - 1}))
            return true;
    return false;
}

bool no_holes(const CellSet& cells) {
    int min_x = 1 << 20, min_y = 1 << 20, max_x = -(1 << 20), max_y = -(1 << 20);
    for (const auto& [x, y] : cells) {
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
    }
    CellSet outside;
    std::vector<std::pair<int, int>> stack{{min_x - 1, min_y - 1}};
    outside.insert(stack[0]);
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        for (auto [nx, ny] : {std::pair{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}}) {
            if (nx < min_x - 1 || nx > max_x + 1 || ny < min_y - 1 || ny > max_y + 1)
                continue;
            if (cells.count({nx, ny}) || outside.count({nx, ny})) continue;
            outside.insert({nx, ny});
            stack.push_back({nx, ny});
        }
    }
    for (int x = min_x; x <= max_x; ++x)
        for (int y = min_y; y <= max_y; ++y)
            if (!cells.count({x, y}) && !outside.count({x, y})) return false;
    return true;
}

// All distinct canonical unions of a and shifted b over a generous window.
std::set<std::string> joins(const Tile& a, const Tile& b) {
    std::set<std::string> keys;
    const CellSet a_cells = shift(a.cells(), 0, 0);
    for (int dx = -8; dx <= 8; ++dx) {
        for (int dy = -8; dy <= 8; ++dy) {
            const CellSet b_cells = shift(b.cells(), dx, dy);
            CellSet joint = a_cells;
            bool disjoint = true;
            for (const auto& c : b_cells)
                if (!joint.insert(c).second) disjoint = false;
            if (!disjoint) continue;
            if (!edge_adjacent(a_cells, b_cells)) continue;
            if (!no_holes(joint)) continue;
            std::vector<Cell> cells;
            for (const auto& [x, y] : joint) cells.push_back(Cell{x, y});
            keys.insert(Tile(std::move(cells)).key());
        }
    }
    return keys;
}

}  // namespace oracle

Tile unit_square() { return parse_tile("#"); }
Tile l_tromino() { return parse_tile("##/#."); }

}  // namespace

TEST_SUITE("tile") {

TEST_CASE("canonical form and text round-trip") {
    Tile shifted(std::vector<Cell>{{5, 7}, {6, 7}, {5, 8}});
    CHECK(shifted.key() == "##/#.");
    CHECK(parse_tile(shifted.key()) == shifted);
    CHECK(parse_tile("##\n#.") == shifted);
    CHECK(to_grid(shifted) == "##\n#.");

    CHECK_THROWS_AS(Tile(std::vector<Cell>{}), ConfigError);
    CHECK_THROWS_AS(Tile(std::vector<Cell>{{0, 0}, {2, 0}}), ConfigError);
    CHECK_THROWS_AS(Tile(std::vector<Cell>{{0, 0}, {0, 0}}), ConfigError);
    CHECK_THROWS_AS(parse_tile("..."), SyntaxError);
    CHECK_THROWS_AS(parse_tile("#x#"), SyntaxError);
}

TEST_CASE("two unit squares always join into a domino") {
    const auto expected = oracle::joins(unit_square(), unit_square());
    // horizontal and vertical dominoes are the only canonical results
    CHECK(expected == std::set<std::string>{"##", "#/#"});

    const auto joins = enumerate_joins(unit_square(), unit_square());
    std::set<std::string> got;
    for (const Tile& t : joins) got.insert(t.key());
    CHECK(got == expected);

    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        auto product = collide_tiles(unit_square(), unit_square(), rng);
        REQUIRE(product.has_value());
        CHECK(product->area() == 2);
        CHECK(expected.count(product->key()) == 1);
    }
}

TEST_CASE("enumeration agrees with the oracle on random pairs") {
    Rng rng(23);
    for (int i = 0; i < 40; ++i) {
        Tile a = random_tile(rng, 1 + static_cast<int>(rng.bounded(4)));
        Tile b = random_tile(rng, 1 + static_cast<int>(rng.bounded(4)));
        std::set<std::string> got;
        for (const Tile& t : enumerate_joins(a, b)) got.insert(t.key());
        CHECK(got == oracle::joins(a, b));
    }
}

TEST_CASE("square and L-tromino can close into a 2x2 block") {
    const auto joins = enumerate_joins(l_tromino(), unit_square());
    bool found = false;
    for (const Tile& t : joins) found = found || t.key() == "##/##";
    CHECK(found);
}

TEST_CASE("corner-only contact yields nothing") {
    // window restricted to the diagonal placement: disjoint but no shared edge
    JoinWindow corner{1, 1, 1, 1};
    CHECK(enumerate_joins(unit_square(), unit_square(), corner).empty());
}

TEST_CASE("products are bigger than both reactants and never shape-equal") {
    Rng rng(29);
    for (int i = 0; i < 200; ++i) {
        Tile a = random_tile(rng, 1 + static_cast<int>(rng.bounded(5)));
        Tile b = random_tile(rng, 1 + static_cast<int>(rng.bounded(5)));
        auto product = collide_tiles(a, b, rng);
        if (!product.has_value()) continue;
        CHECK(product->area() == a.area() + b.area());
        CHECK(product->area() > a.area());
        CHECK(product->area() > b.area());
        CHECK(!same_shape_and_size(*product, a));
        CHECK(!same_shape_and_size(*product, b));
    }
}

TEST_CASE("shape equality with and without symmetries") {
    Tile square = unit_square();
    Tile moved(std::vector<Cell>{{9, 9}});
    CHECK(same_shape_and_size(square, moved));

    CHECK(!same_shape_and_size(parse_tile("##"), square));

    SymmetryFlags rot{true, false};
    CHECK(!same_shape_and_size(parse_tile("##"), parse_tile("#/#")));
    CHECK(same_shape_and_size(parse_tile("##"), parse_tile("#/#"), rot));

    // S/Z pentomino pair needs a reflection
    Tile s_piece = parse_tile(".##/##.");
    Tile z_piece = parse_tile("##./.##");
    CHECK(!same_shape_and_size(s_piece, z_piece, rot));
    SymmetryFlags refl{true, true};
    CHECK(same_shape_and_size(s_piece, z_piece, refl));
}

TEST_CASE("shape equality ignoring size finds the block scale") {
    CHECK(same_shape_ignoring_size(unit_square(), parse_tile("##/##")) == 2);
    CHECK(!same_shape_ignoring_size(unit_square(), parse_tile("##")).has_value());

    Tile doubled = scale_tile(l_tromino(), 2);
    CHECK(doubled.area() == 12);
    CHECK(same_shape_ignoring_size(l_tromino(), doubled) == 2);
    CHECK(same_shape_ignoring_size(doubled, l_tromino()) == 2);
    CHECK(same_shape_ignoring_size(l_tromino(), l_tromino()) == 1);

    // same area, different shape
    CHECK(!same_shape_ignoring_size(parse_tile("###"), l_tromino()).has_value());
}

TEST_CASE("random tiles are valid and deterministic") {
    Rng r1(31), r2(31);
    for (int i = 0; i < 30; ++i) {
        Tile a = random_tile(r1, 6);
        Tile b = random_tile(r2, 6);
        CHECK(a == b);
        CHECK(a.area() == 6);
    }
}

}  // TEST_SUITE
