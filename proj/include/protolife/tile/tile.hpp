#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "protolife/rng.hpp"

namespace protolife::tile {

struct Cell {
    int x = 0;
    int y = 0;
    auto operator<=>(const Cell&) const = default;
};

// Edge-connected polyomino stored in canonical form: translated so
// min x = min y = 0, cells sorted lexicographically.
class Tile {
  public:
    // Canonicalizes; throws ConfigError if cells are empty, duplicated, or not
    // 4-connected.
    explicit Tile(std::vector<Cell> cells);

    const std::vector<Cell>& cells() const { return cells_; }
    int area() const { return static_cast<int>(cells_.size()); }
    int width() const { return width_; }
    int height() const { return height_; }

    bool operator==(const Tile& other) const { return cells_ == other.cells_; }
    bool operator<(const Tile& other) const { return cells_ < other.cells_; }

    // Rows of '#'/'.' joined by '/'; row 0 is y = 0. Stable species key.
    std::string key() const;

  private:
    std::vector<Cell> cells_;
    int width_ = 0;
    int height_ = 0;
};

// Parses '#'/'.' rows separated by newlines or '/'.
Tile parse_tile(std::string_view text);

// Multi-line grid rendering (rows separated by '\n').
std::string to_grid(const Tile& tile);

struct SymmetryFlags {
    bool use_rotations = false;
    bool use_reflections = false;
};

// Equality up to translation; optionally up to the 4 rotations and
// reflections.
bool same_shape_and_size(const Tile& a, const Tile& b, SymmetryFlags flags = {});

// Integer scale k >= 1 such that expanding every cell of the smaller tile to a
// k x k block gives the larger tile (under the same symmetry flags); nullopt
// when shapes differ. k = 1 coincides with same_shape_and_size.
std::optional<int> same_shape_ignoring_size(const Tile& a, const Tile& b,
                                            SymmetryFlags flags = {});

// Offsets of b tried when joining; the default covers the full Minkowski
// range of the two bounding boxes plus a margin of 1.
struct JoinWindow {
    int min_dx, max_dx, min_dy, max_dy;
};
JoinWindow full_join_window(const Tile& a, const Tile& b);

// Every valid way to join b to a: translations of b that are disjoint from a,
// share at least one unit edge with it, and whose union is edge-connected with
// no interior holes. Results are distinct canonical tiles, sorted.
std::vector<Tile> enumerate_joins(const Tile& a, const Tile& b);
std::vector<Tile> enumerate_joins(const Tile& a, const Tile& b,
                                  const JoinWindow& window);

// Uniform choice among enumerate_joins(a, b); nullopt when the tiles do not
// fit together anywhere.
std::optional<Tile> collide_tiles(const Tile& a, const Tile& b, Rng& rng);

// Expands every cell to a k x k block.
Tile scale_tile(const Tile& tile, int k);

// Random polyomino grown by uniform neighbor accretion.
Tile random_tile(Rng& rng, int area);

}  // namespace protolife::tile
