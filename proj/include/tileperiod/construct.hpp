#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tileperiod/core.hpp"
#include "tileperiod/tm.hpp"

namespace tileperiod {

enum class Direction { East, NW };

// Outcome of a determinism check. On failure `given` holds the two known tiles
// and `completions` two distinct tiles that both complete them.
struct DeterminismReport {
    bool deterministic = true;
    std::vector<TileId> given;
    std::vector<TileId> completions;

    explicit operator bool() const { return deterministic; }
};

// Known tiles at (0,0) and (0,1); counts completions at (1,0). A completion is
// a tile creating no forbidden occurrence inside the three cells.
DeterminismReport check_east_deterministic(const TilingSystem& sys);

// Known tiles at (0,0) (west) and (1,1) (north); counts completions at (1,0).
DeterminismReport check_nw_deterministic(const TilingSystem& sys);

// Maps (x, y) to (x - y, y). Turns the NW window of a system into the East
// window of the result.
TilingSystem shear(const TilingSystem& sys);

struct DeterministicTileset {
    TilingSystem system;
    Direction direction = Direction::East;
    bool certified = false;
};

// Runs the check matching `dir` and records the outcome.
DeterministicTileset certify(TilingSystem sys, Direction dir);

// NW-deterministic set re-oriented by `shear` and re-certified as East.
DeterministicTileset east_from_nw(const DeterministicTileset& nw);

// The 16-tile NW-deterministic Wang set of Kari and Culik, certified at load.
// Aperiodicity is taken from the literature, not checked.
DeterministicTileset kari_tileset();

// Two-tile stand-in (alternating columns). Deterministic in both directions
// but periodic; only good for wiring tests.
DeterministicTileset mock_tileset(Direction dir);

// Base-c counter with delimiter columns. Digit tiles carry (digit, carry,
// marker); delimiter tiles carry (carry out of the number on their right,
// marker).
struct CounterLayer {
    int base = 2;
    TilingSystem system;

    TileId digit(int d, int carry, bool r) const;
    TileId delimiter(int carry, bool r) const;
    bool is_delimiter(TileId t) const;
    bool is_r(TileId t) const;
    // Digit value, or -1 on delimiters.
    int value(TileId t) const;
};

CounterLayer counter_tiles(int c);

enum class ConstructionMode { Horizontal, Total };

struct ConstructionSpec {
    TuringMachine machine;
    DeterministicTileset aperiodic;
    int base = 2;
    ConstructionMode mode = ConstructionMode::Horizontal;
};

struct Construction {
    TilingSystem system;
    std::vector<TilingSystem> components;
    std::vector<std::string> layer_names;
    std::vector<std::size_t> layer_sizes;
    std::string manifest;
};

// Columns between delimiters: gray, left border, right border and blank marker
// come on top of the unary input.
inline constexpr int period_offset = 4;

// Layers A (whites + gray), D (counter), T (first-column copy), M (machine +
// gap), S (transition per row).
Construction build_horizontal_construction(const ConstructionSpec& spec, ProductOptions options = {});

// Layers A (whites + crossing/horizontal/vertical gray), D (diagonal signal),
// T1..T4 (first column along rows and diagonals, first row along columns and
// diagonals), M (machine + gaps), S and S2 (transition per row, along rows and
// diagonals).
Construction build_total_construction(const ConstructionSpec& spec, ProductOptions options = {});

Construction build_construction(const ConstructionSpec& spec, ProductOptions options = {});

// Whites w0 (no signal), w1 (signal) and grays X, H, V with the gray adjacency
// rules and the diagonal signal rule, tiles in that order.
TilingSystem diagonal_signal_system();

} // namespace tileperiod
