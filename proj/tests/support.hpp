#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "tileperiod/core.hpp"

namespace tileperiod::testing {

// Random system over 1..max_tiles tiles whose forbidden patterns are
// horizontal and vertical adjacent pairs, each included with probability
// `density`.
inline TilingSystem random_pair_system(std::mt19937& rng, int max_tiles, double density = 0.4) {
    std::uniform_int_distribution<int> size(1, max_tiles);
    std::bernoulli_distribution pick(density);
    TilingSystem s;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) {
        s.add_tile(std::string(1, static_cast<char>('a' + i)));
    }
    for (TileId a = 0; a < static_cast<TileId>(n); ++a) {
        for (TileId b = 0; b < static_cast<TileId>(n); ++b) {
            if (pick(rng)) {
                s.forbidden.push_back(Pattern::horizontal(a, b));
            }
            if (pick(rng)) {
                s.forbidden.push_back(Pattern::vertical(a, b));
            }
        }
    }
    return s;
}

// Tiles the region `times_x` by `times_y` times (wrap flags preserved).
inline RegionAssignment repeat_region(const RegionAssignment& r, int times_x, int times_y) {
    RegionAssignment out(r.width * times_x, r.height * times_y, r.wrap_x, r.wrap_y);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            out.at(x, y) = r.at(x % r.width, y % r.height);
        }
    }
    return out;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("tileperiod-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string data_file(const std::string& name) { return std::string(TILEPERIOD_DATA_DIR) + "/" + name; }

} // namespace tileperiod::testing
