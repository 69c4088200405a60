#include "tileperiod/wang.hpp"

namespace tileperiod {

TilingSystem wang_system(const std::vector<WangTile>& tiles) {
    TilingSystem sys;
    for (const auto& t : tiles) {
        sys.add_tile(t.label);
    }
    const auto n = static_cast<TileId>(tiles.size());
    for (TileId a = 0; a < n; ++a) {
        for (TileId b = 0; b < n; ++b) {
            if (tiles[a].e != tiles[b].w) {
                sys.forbidden.push_back(Pattern::horizontal(a, b));
            }
            if (tiles[a].n != tiles[b].s) {
                sys.forbidden.push_back(Pattern::vertical(a, b));
            }
        }
    }
    return sys;
}

} // namespace tileperiod
