#include "tileperiod/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace tileperiod {

namespace {

int floor_mod(int v, int m) {
    int r = v % m;
    return r < 0 ? r + m : r;
}

} // namespace

Pattern::Pattern(std::vector<PatternCell> cells) : cells_(std::move(cells)) {
    if (cells_.empty()) {
        return;
    }
    int min_dx = cells_.front().dx;
    int min_dy = cells_.front().dy;
    for (const auto& c : cells_) {
        min_dx = std::min(min_dx, c.dx);
        min_dy = std::min(min_dy, c.dy);
    }
    for (auto& c : cells_) {
        c.dx -= min_dx;
        c.dy -= min_dy;
    }
    std::sort(cells_.begin(), cells_.end(), [](const PatternCell& a, const PatternCell& b) {
        return std::tie(a.dy, a.dx, a.layer, a.tile) < std::tie(b.dy, b.dx, b.layer, b.tile);
    });
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

Pattern Pattern::single(TileId t) { return Pattern({{0, 0, t, -1}}); }

Pattern Pattern::horizontal(TileId left, TileId right) {
    return Pattern({{0, 0, left, -1}, {1, 0, right, -1}});
}

Pattern Pattern::vertical(TileId below, TileId above) {
    return Pattern({{0, 0, below, -1}, {0, 1, above, -1}});
}

int Pattern::width() const {
    int w = 0;
    for (const auto& c : cells_) {
        w = std::max(w, c.dx + 1);
    }
    return w;
}

int Pattern::height() const {
    int h = 0;
    for (const auto& c : cells_) {
        h = std::max(h, c.dy + 1);
    }
    return h;
}

bool Pattern::is_layered() const {
    return std::any_of(cells_.begin(), cells_.end(), [](const PatternCell& c) { return c.layer >= 0; });
}

bool Pattern::is_pair() const {
    return cells_.size() == 2 && !is_layered() &&
           (cells_[0].dx != cells_[1].dx || cells_[0].dy != cells_[1].dy);
}

std::optional<Pattern> reduce_pattern_mod(const Pattern& pat, std::optional<int> px,
                                          std::optional<int> py) {
    std::vector<PatternCell> cells(pat.cells().begin(), pat.cells().end());
    for (auto& c : cells) {
        if (px) {
            c.dx = floor_mod(c.dx, *px);
        }
        if (py) {
            c.dy = floor_mod(c.dy, *py);
        }
    }
    std::sort(cells.begin(), cells.end());
    for (std::size_t i = 1; i < cells.size(); ++i) {
        const auto& a = cells[i - 1];
        const auto& b = cells[i];
        if (a.dx == b.dx && a.dy == b.dy && a.layer == b.layer && a.tile != b.tile) {
            return std::nullopt;
        }
    }
    return Pattern(std::move(cells));
}

int TilingSystem::hwidth() const {
    int w = 0;
    for (const auto& p : forbidden) {
        w = std::max(w, p.width());
    }
    return w;
}

int TilingSystem::vheight() const {
    int h = 0;
    for (const auto& p : forbidden) {
        h = std::max(h, p.height());
    }
    return h;
}

int TilingSystem::radius() const { return std::max({1, hwidth(), vheight()}); }

TileId TilingSystem::add_tile(std::string label) {
    const auto id = static_cast<TileId>(tiles.size());
    tiles.push_back(Tile{id, std::move(label), {}});
    return id;
}

std::optional<TileId> TilingSystem::find(std::string_view label) const {
    for (const auto& t : tiles) {
        if (t.label == label) {
            return t.id;
        }
    }
    return std::nullopt;
}

TileId TilingSystem::at(std::string_view label) const {
    if (auto id = find(label)) {
        return *id;
    }
    throw UnknownTile("no tile labelled '" + std::string(label) + "'");
}

bool TilingSystem::matches(TileId t, const PatternCell& cell) const {
    if (cell.layer < 0) {
        return t == cell.tile;
    }
    const auto& layers_of = tiles[t].layers;
    const auto l = static_cast<std::size_t>(cell.layer);
    return l < layers_of.size() && layers_of[l] == cell.tile;
}

bool TilingSystem::is_pair_system() const {
    return std::all_of(forbidden.begin(), forbidden.end(), [](const Pattern& p) { return p.is_pair(); });
}

std::vector<Diagnostic> validate_system(const TilingSystem& sys) {
    std::vector<Diagnostic> out;
    if (sys.tiles.empty()) {
        out.push_back({"empty_alphabet", "system has no tiles"});
    }
    std::set<std::string> labels;
    for (std::size_t i = 0; i < sys.tiles.size(); ++i) {
        const auto& t = sys.tiles[i];
        if (t.id != i) {
            out.push_back({"bad_tile_id", "tile '" + t.label + "' has id " + std::to_string(t.id) +
                                              " at position " + std::to_string(i)});
        }
        if (!labels.insert(t.label).second) {
            out.push_back({"duplicate_label", "tile label '" + t.label + "' is not unique"});
        }
        if (t.layers.size() != sys.layers.size()) {
            out.push_back({"layer_arity", "tile '" + t.label + "' has " + std::to_string(t.layers.size()) +
                                              " layer entries, system declares " +
                                              std::to_string(sys.layers.size())});
        } else {
            for (std::size_t l = 0; l < t.layers.size(); ++l) {
                if (t.layers[l] >= sys.layers[l].labels.size()) {
                    out.push_back({"layer_value", "tile '" + t.label + "' uses unknown value " +
                                                      std::to_string(t.layers[l]) + " on layer " +
                                                      std::to_string(l)});
                }
            }
        }
    }
    for (std::size_t k = 0; k < sys.forbidden.size(); ++k) {
        const auto& p = sys.forbidden[k];
        const std::string where = "pattern " + std::to_string(k);
        if (p.empty()) {
            out.push_back({"empty_pattern", where + " is empty"});
            continue;
        }
        const auto cells = p.cells();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto& c = cells[i];
            if (c.layer < 0) {
                if (c.tile >= sys.tiles.size()) {
                    out.push_back({"unknown_tile", where + " references unknown tile id " + std::to_string(c.tile)});
                }
            } else if (static_cast<std::size_t>(c.layer) >= sys.layers.size()) {
                out.push_back({"unknown_layer", where + " references unknown layer " + std::to_string(c.layer)});
            } else if (c.tile >= sys.layers[static_cast<std::size_t>(c.layer)].labels.size()) {
                out.push_back({"unknown_tile", where + " references unknown value " + std::to_string(c.tile) +
                                                   " on layer " + std::to_string(c.layer)});
            }
            if (i > 0) {
                const auto& prev = cells[i - 1];
                if (prev.dx == c.dx && prev.dy == c.dy && prev.layer == c.layer) {
                    out.push_back({"duplicate_offset", where + " demands two tiles at offset (" +
                                                           std::to_string(c.dx) + "," + std::to_string(c.dy) + ")"});
                }
            }
        }
    }
    return out;
}

RegionAssignment::RegionAssignment(int w, int h, bool wx, bool wy, TileId fill)
    : width(w), height(h), wrap_x(wx), wrap_y(wy) {
    if (w <= 0 || h <= 0) {
        throw InvalidDimensions("region extents must be positive");
    }
    cells.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

bool RegionAssignment::invariant_under(int dx, int dy) const {
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (at(x, y) != at(floor_mod(x + dx, width), floor_mod(y + dy, height))) {
                return false;
            }
        }
    }
    return true;
}

std::vector<Violation> check_region(const TilingSystem& sys, const RegionAssignment& region) {
    for (const auto t : region.cells) {
        if (t >= sys.tiles.size()) {
            throw UnknownTile("region uses unknown tile id " + std::to_string(t));
        }
    }
    std::vector<Violation> out;
    const int w = region.width;
    const int h = region.height;
    for (std::size_t k = 0; k < sys.forbidden.size(); ++k) {
        auto reduced = reduce_pattern_mod(sys.forbidden[k], region.wrap_x ? std::optional(w) : std::nullopt,
                                          region.wrap_y ? std::optional(h) : std::nullopt);
        if (!reduced || reduced->empty()) {
            continue;
        }
        const int xs = region.wrap_x ? w : w - reduced->width() + 1;
        const int ys = region.wrap_y ? h : h - reduced->height() + 1;
        for (int y = 0; y < ys; ++y) {
            for (int x = 0; x < xs; ++x) {
                bool hit = true;
                for (const auto& c : reduced->cells()) {
                    const int cx = region.wrap_x ? (x + c.dx) % w : x + c.dx;
                    const int cy = region.wrap_y ? (y + c.dy) % h : y + c.dy;
                    if (!sys.matches(region.at(cx, cy), c)) {
                        hit = false;
                        break;
                    }
                }
                if (hit) {
                    out.push_back({k, x, y});
                }
            }
        }
    }
    return out;
}

namespace {

// Concrete patterns equivalent to `pat` over the alphabet of `sys`.
std::vector<Pattern> concretize(const TilingSystem& sys, const Pattern& pat) {
    if (!pat.is_layered()) {
        return {pat};
    }
    struct Slot {
        int dx;
        int dy;
        std::vector<TileId> options;
    };
    std::vector<Slot> slots;
    std::map<std::pair<int, int>, std::vector<PatternCell>> by_offset;
    for (const auto& c : pat.cells()) {
        by_offset[{c.dx, c.dy}].push_back(c);
    }
    for (const auto& [off, demands] : by_offset) {
        Slot s{off.first, off.second, {}};
        for (const auto& t : sys.tiles) {
            if (std::all_of(demands.begin(), demands.end(),
                            [&](const PatternCell& d) { return sys.matches(t.id, d); })) {
                s.options.push_back(t.id);
            }
        }
        if (s.options.empty()) {
            return {};
        }
        slots.push_back(std::move(s));
    }
    std::vector<Pattern> out;
    std::vector<std::size_t> pick(slots.size(), 0);
    while (true) {
        std::vector<PatternCell> cells;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            cells.push_back({slots[i].dx, slots[i].dy, slots[i].options[pick[i]], -1});
        }
        out.emplace_back(std::move(cells));
        std::size_t i = 0;
        for (; i < slots.size(); ++i) {
            if (++pick[i] < slots[i].options.size()) {
                break;
            }
            pick[i] = 0;
        }
        if (i == slots.size()) {
            break;
        }
    }
    return out;
}

} // namespace

TilingSystem flatten_layers(const TilingSystem& sys) {
    TilingSystem out;
    out.metadata = sys.metadata;
    out.tiles.reserve(sys.tiles.size());
    for (const auto& t : sys.tiles) {
        out.tiles.push_back(Tile{t.id, t.label, {}});
    }
    for (const auto& p : sys.forbidden) {
        for (auto& q : concretize(sys, p)) {
            out.forbidden.push_back(std::move(q));
        }
    }
    return out;
}

TilingSystem layer_product(std::span<const TilingSystem> systems, std::span<const CouplingPattern> coupling,
                           std::span<const std::string> names, ProductOptions options) {
    if (systems.empty()) {
        throw AlphabetMismatch("layer_product needs at least one component");
    }
    const std::size_t m = systems.size();
    std::size_t n = 1;
    for (const auto& s : systems) {
        if (s.tiles.empty()) {
            throw AlphabetMismatch("layer_product component has no tiles");
        }
        if (n > options.max_tiles / s.tiles.size()) {
            throw ResourceLimit("layer product exceeds " + std::to_string(options.max_tiles) + " tiles");
        }
        n *= s.tiles.size();
    }

    TilingSystem out;
    for (std::size_t i = 0; i < m; ++i) {
        Layer layer;
        layer.name = i < names.size() ? names[i] : "L" + std::to_string(i);
        for (const auto& t : systems[i].tiles) {
            layer.labels.push_back(t.label);
        }
        out.layers.push_back(std::move(layer));
    }

    out.tiles.reserve(n);
    std::vector<TileId> digits(m, 0);
    for (std::size_t id = 0; id < n; ++id) {
        std::string label;
        for (std::size_t i = 0; i < m; ++i) {
            if (i > 0) {
                label += '|';
            }
            label += systems[i].tiles[digits[i]].label;
        }
        out.tiles.push_back(Tile{static_cast<TileId>(id), std::move(label), digits});
        for (std::size_t i = m; i-- > 0;) {
            if (++digits[i] < systems[i].tiles.size()) {
                break;
            }
            digits[i] = 0;
        }
    }

    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& p : systems[i].forbidden) {
            for (const auto& q : concretize(systems[i], p)) {
                std::vector<PatternCell> cells;
                for (const auto& c : q.cells()) {
                    cells.push_back({c.dx, c.dy, c.tile, static_cast<int>(i)});
                }
                out.forbidden.emplace_back(std::move(cells));
            }
        }
    }

    for (const auto& cp : coupling) {
        std::vector<PatternCell> cells;
        for (const auto& tc : cp) {
            if (tc.tuple.size() != m) {
                throw AlphabetMismatch("coupling tuple has arity " + std::to_string(tc.tuple.size()) +
                                       ", product has " + std::to_string(m) + " components");
            }
            bool any = false;
            for (std::size_t i = 0; i < m; ++i) {
                if (!tc.tuple[i]) {
                    continue;
                }
                if (*tc.tuple[i] >= systems[i].tiles.size()) {
                    throw AlphabetMismatch("coupling tuple uses unknown tile " + std::to_string(*tc.tuple[i]) +
                                           " of component " + std::to_string(i));
                }
                cells.push_back({tc.dx, tc.dy, *tc.tuple[i], static_cast<int>(i)});
                any = true;
            }
            if (!any) {
                throw AlphabetMismatch("coupling cell constrains no component");
            }
        }
        if (cells.empty()) {
            throw AlphabetMismatch("empty coupling pattern");
        }
        out.forbidden.emplace_back(std::move(cells));
    }
    return out;
}

TilingSystem disjoint_union(const TilingSystem& a, const TilingSystem& b) {
    const TilingSystem fa = flatten_layers(a);
    const TilingSystem fb = flatten_layers(b);
    const auto na = static_cast<TileId>(fa.tiles.size());
    const auto nb = static_cast<TileId>(fb.tiles.size());

    TilingSystem out;
    for (const auto& t : fa.tiles) {
        out.add_tile("1:" + t.label);
    }
    for (const auto& t : fb.tiles) {
        out.add_tile("2:" + t.label);
    }
    out.forbidden = fa.forbidden;
    for (const auto& p : fb.forbidden) {
        std::vector<PatternCell> cells(p.cells().begin(), p.cells().end());
        for (auto& c : cells) {
            c.tile += na;
        }
        out.forbidden.emplace_back(std::move(cells));
    }
    for (TileId i = 0; i < na; ++i) {
        for (TileId j = na; j < na + nb; ++j) {
            out.forbidden.push_back(Pattern::horizontal(i, j));
            out.forbidden.push_back(Pattern::horizontal(j, i));
            out.forbidden.push_back(Pattern::vertical(i, j));
            out.forbidden.push_back(Pattern::vertical(j, i));
        }
    }
    return out;
}

namespace fixtures {

TilingSystem stripes() {
    TilingSystem s;
    const auto a = s.add_tile("a");
    const auto b = s.add_tile("b");
    s.forbidden = {Pattern::horizontal(a, a), Pattern::horizontal(b, b), Pattern::vertical(a, b),
                   Pattern::vertical(b, a)};
    return s;
}

TilingSystem single_free() {
    TilingSystem s;
    s.add_tile("t");
    return s;
}

TilingSystem single_forbidden() {
    TilingSystem s;
    const auto t = s.add_tile("t");
    s.forbidden = {Pattern::single(t)};
    return s;
}

TilingSystem no_double_a() {
    TilingSystem s;
    const auto a = s.add_tile("a");
    s.add_tile("b");
    s.forbidden = {Pattern::horizontal(a, a)};
    return s;
}

TilingSystem free_pair() {
    TilingSystem s;
    s.add_tile("a");
    s.add_tile("b");
    return s;
}

} // namespace fixtures

} // namespace tileperiod
