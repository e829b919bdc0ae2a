#include "protolife/tile/tile.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "protolife/errors.hpp"

namespace protolife::tile {

namespace {

constexpr Cell kNeighborOffsets[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

bool connected(const std::vector<Cell>& cells) {
    if (cells.empty()) return false;
    std::set<Cell> todo(cells.begin(), cells.end());
    std::vector<Cell> stack{*todo.begin()};
    todo.erase(todo.begin());
    while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        for (const Cell& d : kNeighborOffsets) {
            const Cell n{c.x + d.x, c.y + d.y};
            auto it = todo.find(n);
            if (it != todo.end()) {
                todo.erase(it);
                stack.push_back(n);
            }
        }
    }
    return todo.empty();
}

std::vector<Cell> canonicalize(std::vector<Cell> cells) {
    int min_x = std::numeric_limits<int>::max();
    int min_y = std::numeric_limits<int>::max();
    for (const Cell& c : cells) {
        min_x = std::min(min_x, c.x);
        min_y = std::min(min_y, c.y);
    }
    for (Cell& c : cells) {
        c.x -= min_x;
        c.y -= min_y;
    }
    std::sort(cells.begin(), cells.end());
    return cells;
}

}  // namespace

Tile::Tile(std::vector<Cell> cells) {
    if (cells.empty()) throw ConfigError("tile must have at least one cell");
    cells_ = canonicalize(std::move(cells));
    if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end())
        throw ConfigError("tile has duplicate cells");
    if (!connected(cells_)) throw ConfigError("tile cells must be edge-connected");
    for (const Cell& c : cells_) {
        width_ = std::max(width_, c.x + 1);
        height_ = std::max(height_, c.y + 1);
    }
}

std::string Tile::key() const {
    std::string out;
    std::set<Cell> lookup(cells_.begin(), cells_.end());
    for (int y = 0; y < height_; ++y) {
        if (y > 0) out += '/';
        for (int x = 0; x < width_; ++x)
            out += lookup.contains(Cell{x, y}) ? '#' : '.';
    }
    return out;
}

Tile parse_tile(std::string_view text) {
    std::vector<Cell> cells;
    int x = 0, y = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n' || c == '/') {
            ++y;
            x = 0;
        } else if (c == '#') {
            cells.push_back(Cell{x++, y});
        } else if (c == '.') {
            ++x;
        } else if (c == '\r' || c == ' ' || c == '\t') {
            // ignored
        } else {
            throw SyntaxError("unexpected character in tile grid", i);
        }
    }
    if (cells.empty()) throw SyntaxError("tile grid has no '#' cells", 0);
    return Tile(std::move(cells));
}

std::string to_grid(const Tile& tile) {
    std::string out = tile.key();
    std::replace(out.begin(), out.end(), '/', '\n');
    return out;
}

namespace {

Tile transform(const Tile& t, int rotation, bool reflect) {
    std::vector<Cell> cells = t.cells();
    if (reflect)
        for (Cell& c : cells) c.x = -c.x;
    for (int r = 0; r < rotation; ++r)
        for (Cell& c : cells) c = Cell{c.y, -c.x};
    return Tile(std::move(cells));
}

// All symmetry images of b permitted by the flags.
std::vector<Tile> variants(const Tile& b, SymmetryFlags flags) {
    std::vector<Tile> out;
    const int rotations = flags.use_rotations ? 4 : 1;
    for (int refl = 0; refl < (flags.use_reflections ? 2 : 1); ++refl)
        for (int rot = 0; rot < rotations; ++rot)
            out.push_back(transform(b, rot, refl != 0));
    return out;
}

}  // namespace

bool same_shape_and_size(const Tile& a, const Tile& b, SymmetryFlags flags) {
    if (a.area() != b.area()) return false;
    for (const Tile& v : variants(b, flags))
        if (a == v) return true;
    return false;
}

Tile scale_tile(const Tile& tile, int k) {
    if (k < 1) throw ConfigError("tile scale factor must be >= 1");
    std::vector<Cell> cells;
    cells.reserve(tile.cells().size() * static_cast<std::size_t>(k) *
                  static_cast<std::size_t>(k));
    for (const Cell& c : tile.cells())
        for (int dx = 0; dx < k; ++dx)
            for (int dy = 0; dy < k; ++dy)
                cells.push_back(Cell{c.x * k + dx, c.y * k + dy});
    return Tile(std::move(cells));
}

std::optional<int> same_shape_ignoring_size(const Tile& a, const Tile& b,
                                            SymmetryFlags flags) {
    const Tile& small = a.area() <= b.area() ? a : b;
    const Tile& large = a.area() <= b.area() ? b : a;
    if (large.area() % small.area() != 0) return std::nullopt;
    const int ratio = large.area() / small.area();
    int k = 1;
    while (k * k < ratio) ++k;
    if (k * k != ratio) return std::nullopt;
    if (same_shape_and_size(scale_tile(small, k), large, flags)) return k;
    return std::nullopt;
}

namespace {

// No empty cell of the union may be sealed off: flood from outside the padded
// bounding box and require every empty cell to be reached.
bool hole_free(const std::set<Cell>& cells) {
    int min_x = std::numeric_limits<int>::max(), min_y = min_x;
    int max_x = std::numeric_limits<int>::min(), max_y = max_x;
    for (const Cell& c : cells) {
        min_x = std::min(min_x, c.x);
        min_y = std::min(min_y, c.y);
        max_x = std::max(max_x, c.x);
        max_y = std::max(max_y, c.y);
    }
    const int w = max_x - min_x + 3, h = max_y - min_y + 3;  // pad by 1
    std::vector<char> occupied(static_cast<std::size_t>(w * h), 0);
    auto at = [&](int x, int y) -> char& {
        return occupied[static_cast<std::size_t>(y * w + x)];
    };
    for (const Cell& c : cells) at(c.x - min_x + 1, c.y - min_y + 1) = 1;

    std::vector<std::pair<int, int>> stack{{0, 0}};
    at(0, 0) = 2;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        for (const Cell& d : kNeighborOffsets) {
            const int nx = x + d.x, ny = y + d.y;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            if (at(nx, ny) != 0) continue;
            at(nx, ny) = 2;
            ++reached;
            stack.push_back({nx, ny});
        }
    }
    return reached == static_cast<std::size_t>(w * h) - cells.size();
}

}  // namespace

JoinWindow full_join_window(const Tile& a, const Tile& b) {
    return JoinWindow{-b.width() - 1, a.width() + 1, -b.height() - 1,
                      a.height() + 1};
}

std::vector<Tile> enumerate_joins(const Tile& a, const Tile& b) {
    return enumerate_joins(a, b, full_join_window(a, b));
}

std::vector<Tile> enumerate_joins(const Tile& a, const Tile& b,
                                  const JoinWindow& window) {
    std::set<Cell> a_cells(a.cells().begin(), a.cells().end());
    std::set<Tile> results;
    for (int dx = window.min_dx; dx <= window.max_dx; ++dx) {
        for (int dy = window.min_dy; dy <= window.max_dy; ++dy) {
            bool disjoint = true;
            bool touches = false;
            for (const Cell& c : b.cells()) {
                const Cell shifted{c.x + dx, c.y + dy};
                if (a_cells.contains(shifted)) {
                    disjoint = false;
                    break;
                }
                for (const Cell& d : kNeighborOffsets)
                    if (a_cells.contains(Cell{shifted.x + d.x, shifted.y + d.y}))
                        touches = true;
            }
            if (!disjoint || !touches) continue;

            std::set<Cell> joint = a_cells;
            for (const Cell& c : b.cells()) joint.insert(Cell{c.x + dx, c.y + dy});
            if (!hole_free(joint)) continue;
            std::vector<Cell> cells(joint.begin(), joint.end());
            if (!connected(cells)) continue;
            results.insert(Tile(std::move(cells)));
        }
    }
    return {results.begin(), results.end()};
}

std::optional<Tile> collide_tiles(const Tile& a, const Tile& b, Rng& rng) {
    const auto joins = enumerate_joins(a, b);
    if (joins.empty()) return std::nullopt;
    return joins[rng.bounded(joins.size())];
}

Tile random_tile(Rng& rng, int area) {
    if (area < 1) throw ConfigError("random_tile: area must be >= 1");
    std::set<Cell> cells{Cell{0, 0}};
    while (static_cast<int>(cells.size()) < area) {
        std::set<Cell> frontier;
        for (const Cell& c : cells)
            for (const Cell& d : kNeighborOffsets) {
                const Cell n{c.x + d.x, c.y + d.y};
                if (!cells.contains(n)) frontier.insert(n);
            }
        auto it = frontier.begin();
        std::advance(it, static_cast<long>(rng.bounded(frontier.size())));
        cells.insert(*it);
    }
    return Tile(std::vector<Cell>(cells.begin(), cells.end()));
}

}  // namespace protolife::tile
