#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tileperiod/errors.hpp"

namespace tileperiod {

using TileId = std::uint32_t;

// A tile of a (possibly layered) system. `id` is the tile's index in
// TilingSystem::tiles. For layered systems `layers[i]` is the tile's id in the
// alphabet of component i.
struct Tile {
    TileId id = 0;
    std::string label;
    std::vector<TileId> layers;

    bool operator==(const Tile&) const = default;
};

// Component alphabet of a layered system.
struct Layer {
    std::string name;
    std::vector<std::string> labels;

    bool operator==(const Layer&) const = default;
};

// One cell demand of a pattern. With layer == -1 the cell matches exactly the
// tile `tile`; otherwise it matches every tile whose component `layer` equals
// `tile`. Several demands at the same offset are a conjunction.
struct PatternCell {
    int dx = 0;
    int dy = 0;
    TileId tile = 0;
    int layer = -1;

    auto operator<=>(const PatternCell&) const = default;
};

// Finite partial map from offsets to tile demands, kept normalized: min dx and
// min dy are zero and cells are sorted. y grows upward.
class Pattern {
public:
    Pattern() = default;
    explicit Pattern(std::vector<PatternCell> cells);

    static Pattern single(TileId t);
    // `left` at (0,0), `right` at (1,0).
    static Pattern horizontal(TileId left, TileId right);
    // `below` at (0,0), `above` at (0,1).
    static Pattern vertical(TileId below, TileId above);

    std::span<const PatternCell> cells() const { return cells_; }
    bool empty() const { return cells_.empty(); }
    int width() const;
    int height() const;
    bool is_layered() const;
    // Exactly two concrete cells at distinct offsets.
    bool is_pair() const;

    auto operator<=>(const Pattern&) const = default;

private:
    std::vector<PatternCell> cells_;
};

// Reduces offsets modulo the given periods. Returns nullopt when two reduced
// demands on the same cell and layer disagree: the pattern can then never occur
// in a configuration with that periodicity.
std::optional<Pattern> reduce_pattern_mod(const Pattern& pat, std::optional<int> px,
                                          std::optional<int> py);

// The pair (tile alphabet, forbidden patterns).
struct TilingSystem {
    std::vector<Tile> tiles;
    std::vector<Pattern> forbidden;
    std::vector<Layer> layers;
    std::map<std::string, std::string> metadata;

    std::size_t size() const { return tiles.size(); }
    int hwidth() const;
    int vheight() const;
    // Max of hwidth and vheight; 1 when there are no patterns.
    int radius() const;

    // Appends a plain tile and returns its id.
    TileId add_tile(std::string label);
    std::optional<TileId> find(std::string_view label) const;
    TileId at(std::string_view label) const;

    // Whether tile `t` satisfies the demand of `cell` (offsets ignored).
    bool matches(TileId t, const PatternCell& cell) const;

    // Every forbidden pattern consists of two concrete cells.
    bool is_pair_system() const;

    bool operator==(const TilingSystem&) const = default;
};

struct Diagnostic {
    std::string code;
    std::string message;
};

std::vector<Diagnostic> validate_system(const TilingSystem& sys);

// Finite window of a configuration. Cells are stored row-major, row 0 at the
// bottom. With wrap on an axis, coordinates on that axis are read modulo the
// extent.
struct RegionAssignment {
    int width = 0;
    int height = 0;
    std::vector<TileId> cells;
    bool wrap_x = false;
    bool wrap_y = false;

    RegionAssignment() = default;
    RegionAssignment(int w, int h, bool wx, bool wy, TileId fill = 0);

    static RegionAssignment torus(int p, TileId fill = 0) { return {p, p, true, true, fill}; }

    TileId at(int x, int y) const { return cells[index(x, y)]; }
    TileId& at(int x, int y) { return cells[index(x, y)]; }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(x);
    }

    // Shift invariance: at(x, y) == at(x + dx, y + dy) for all cells,
    // reading indices modulo the extents.
    bool invariant_under(int dx, int dy) const;

    bool operator==(const RegionAssignment&) const = default;
};

struct Violation {
    std::size_t pattern = 0;
    int x = 0;
    int y = 0;

    bool operator==(const Violation&) const = default;
};

// All forbidden-pattern occurrences in the region. Patterns straddling a
// non-wrapped boundary are not occurrences.
std::vector<Violation> check_region(const TilingSystem& sys, const RegionAssignment& region);

// A cell of a coupling pattern over tuple tiles: entry i constrains
// component i, nullopt leaves it free.
struct TupleCell {
    int dx = 0;
    int dy = 0;
    std::vector<std::optional<TileId>> tuple;
};

using CouplingPattern = std::vector<TupleCell>;

struct ProductOptions {
    std::size_t max_tiles = 2'000'000;
};

// Cartesian product of the component systems. Component patterns are lifted as
// layer demands (free on the other components); coupling patterns are added
// as given.
TilingSystem layer_product(std::span<const TilingSystem> systems,
                           std::span<const CouplingPattern> coupling = {},
                           std::span<const std::string> names = {},
                           ProductOptions options = {});

// Tagged union; tiles of different sides may never be horizontally or
// vertically adjacent.
TilingSystem disjoint_union(const TilingSystem& a, const TilingSystem& b);

// Replaces layered pattern cells by concrete tiles (one pattern per
// combination of matching tiles) and drops the layer structure.
TilingSystem flatten_layers(const TilingSystem& sys);

// Small reference systems used by tests and examples.
namespace fixtures {
// Tiles {a,b}; forbidden horizontal aa, bb and vertical ab, ba: constant
// columns alternating a, b.
TilingSystem stripes();
// One tile, nothing forbidden.
TilingSystem single_free();
// One tile which is itself forbidden.
TilingSystem single_forbidden();
// Tiles {a,b}; only the horizontal pair aa is forbidden.
TilingSystem no_double_a();
// Tiles {a,b}; nothing forbidden.
TilingSystem free_pair();
} // namespace fixtures

} // namespace tileperiod
