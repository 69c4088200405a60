#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tileperiod/core.hpp"

namespace tileperiod {

using TileMask = boost::dynamic_bitset<std::uint64_t>;

// A forbidden pattern with every demand resolved to the set of tiles it
// matches; demands sharing an offset are intersected.
struct MaskedCell {
    int dx = 0;
    int dy = 0;
    TileMask mask;
};

using MaskedPattern = std::vector<MaskedCell>;

// Per-system precomputation shared by all searches over that system.
class CompiledSystem {
public:
    explicit CompiledSystem(const TilingSystem& sys);

    const TilingSystem& system() const { return *sys_; }
    std::size_t tile_count() const { return sys_->tiles.size(); }

    // Patterns after reducing offsets modulo the periods; patterns that become
    // unsatisfiable are dropped.
    std::vector<MaskedPattern> reduced(std::optional<int> px, std::optional<int> py) const;

    TileMask full() const;

private:
    const TilingSystem* sys_;
    std::vector<MaskedPattern> patterns_;
};

struct SearchOptions {
    // Maximum number of tile placements before ResourceLimit is thrown.
    std::uint64_t node_budget = 200'000'000;
};

// Exhaustive backtracking over one rectangular region. Cells are assigned in
// row-major order starting at the bottom row, tiles in ascending id order, so
// solutions are produced in lexicographic order.
class RegionSearch {
public:
    RegionSearch(const CompiledSystem& compiled, int width, int height, bool wrap_x, bool wrap_y,
                 SearchOptions options = {});
    ~RegionSearch();
    RegionSearch(RegionSearch&&) noexcept;
    RegionSearch& operator=(RegionSearch&&) noexcept;

    int width() const;
    int height() const;

    // Domain restrictions apply to subsequent runs until reset_domains().
    void restrict_cell(int x, int y, const TileMask& allowed);
    void fix_cell(int x, int y, TileId t);
    void reset_domains();

    // Calls `visit` for each solution until it returns false. Returns the
    // number of solutions visited.
    std::uint64_t enumerate(const std::function<bool(const RegionAssignment&)>& visit);
    std::optional<RegionAssignment> first();

    std::uint64_t nodes() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace tileperiod
