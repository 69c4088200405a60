#pragma once

#include <string>
#include <vector>

#include "tileperiod/core.hpp"

namespace tileperiod {

// Edge-coloured square. Two tiles may be horizontally adjacent when the left
// tile's east colour equals the right tile's west colour, and vertically
// adjacent when the lower tile's north colour equals the upper tile's south.
struct WangTile {
    std::string label;
    std::string w;
    std::string n;
    std::string s;
    std::string e;

    bool operator==(const WangTile&) const = default;
};

// Pair system with every mismatching adjacency forbidden. Tile i of the
// result is tiles[i].
TilingSystem wang_system(const std::vector<WangTile>& tiles);

} // namespace tileperiod
