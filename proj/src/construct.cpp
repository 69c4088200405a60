#include "tileperiod/construct.hpp"

#include <array>
#include <sstream>

#include "tileperiod/wang.hpp"

namespace tileperiod {

namespace {

// Pattern occurrence confined to a three-cell window: the slot of each cell.
struct Template {
    const Pattern* pattern;
    std::vector<int> slots;
    bool touches_target = false;
};

std::vector<Template> window_templates(const TilingSystem& sys, const std::array<std::pair<int, int>, 3>& window) {
    auto slot_of = [&](int x, int y) {
        for (int i = 0; i < 3; ++i) {
            if (window[static_cast<std::size_t>(i)] == std::pair{x, y}) {
                return i;
            }
        }
        return -1;
    };
    std::vector<Template> out;
    for (const auto& p : sys.forbidden) {
        const auto cells = p.cells();
        if (cells.empty()) {
            continue;
        }
        for (const auto& [wx, wy] : window) {
            const int tx = wx - cells[0].dx;
            const int ty = wy - cells[0].dy;
            Template t{&p, {}, false};
            bool inside = true;
            for (const auto& c : cells) {
                const int s = slot_of(c.dx + tx, c.dy + ty);
                if (s < 0) {
                    inside = false;
                    break;
                }
                t.slots.push_back(s);
                t.touches_target = t.touches_target || s == 2;
            }
            if (inside) {
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

bool hits(const TilingSystem& sys, const Template& t, const std::array<TileId, 3>& tiles) {
    const auto cells = t.pattern->cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!sys.matches(tiles[static_cast<std::size_t>(t.slots[i])], cells[i])) {
            return false;
        }
    }
    return true;
}

DeterminismReport check_window(const TilingSystem& sys, const std::array<std::pair<int, int>, 3>& window) {
    const auto templates = window_templates(sys, window);
    const auto n = static_cast<TileId>(sys.size());
    DeterminismReport report;
    for (TileId a = 0; a < n; ++a) {
        for (TileId b = 0; b < n; ++b) {
            std::array<TileId, 3> tiles{a, b, 0};
            bool consistent = true;
            for (const auto& t : templates) {
                if (!t.touches_target && hits(sys, t, tiles)) {
                    consistent = false;
                    break;
                }
            }
            if (!consistent) {
                continue;
            }
            std::vector<TileId> found;
            for (TileId c = 0; c < n && found.size() < 2; ++c) {
                tiles[2] = c;
                bool ok = true;
                for (const auto& t : templates) {
                    if (t.touches_target && hits(sys, t, tiles)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    found.push_back(c);
                }
            }
            if (found.size() > 1) {
                return {false, {a, b}, found};
            }
        }
    }
    return report;
}

TilingSystem plain_system(const std::vector<std::string>& labels) {
    TilingSystem s;
    for (const auto& l : labels) {
        s.add_tile(l);
    }
    return s;
}

// Forbids neighbours at offset (dx, dy) holding different tiles.
void constant_along(TilingSystem& s, int dx, int dy) {
    const auto n = static_cast<TileId>(s.size());
    for (TileId a = 0; a < n; ++a) {
        for (TileId b = 0; b < n; ++b) {
            if (a != b) {
                s.forbidden.emplace_back(std::vector<PatternCell>{{0, 0, a, -1}, {dx, dy, b, -1}});
            }
        }
    }
}

std::vector<std::string> white_labels(const DeterministicTileset& set) {
    std::vector<std::string> out;
    for (const auto& t : set.system.tiles) {
        out.push_back("w:" + t.label);
    }
    return out;
}

void require_spec(const ConstructionSpec& spec, Direction dir) {
    const char* name = dir == Direction::East ? "East" : "NW";
    if (!spec.aperiodic.certified) {
        throw UncertifiedAperiodicSet("aperiodic tile set is not certified");
    }
    if (spec.aperiodic.direction != dir) {
        throw UncertifiedAperiodicSet(std::string("construction needs a set certified ") + name + "-deterministic");
    }
    const bool ok = dir == Direction::East ? check_east_deterministic(spec.aperiodic.system).deterministic
                                           : check_nw_deterministic(spec.aperiodic.system).deterministic;
    if (!ok) {
        throw UncertifiedAperiodicSet(std::string("tile set fails the ") + name + " determinism check");
    }
    if (spec.base < 2) {
        throw InvalidDimensions("counter base must be at least 2");
    }
    validate_machine(spec.machine);
    const auto& m = spec.machine;
    const auto one = std::find(m.symbols.begin(), m.symbols.end(), "1");
    if (one == m.symbols.end() ||
        std::find(m.input.begin(), m.input.end(), static_cast<int>(one - m.symbols.begin())) == m.input.end()) {
        throw InvalidMachine("construction machines read unary input: '1' must be an input symbol");
    }
}

// Machine layer: encode_tm tiles plus gap tiles, with the input row limited to
// 1...1 followed by one blank.
struct MachineLayer {
    TilingSystem system;
    std::vector<TileId> actions; // indexed by transition
    std::vector<TileId> bottom;  // BL, B, BR
    std::vector<TileId> gaps;
};

MachineLayer machine_layer(const TuringMachine& m, const std::vector<WangTile>& gaps) {
    auto tiles = tm_wang_tiles(m);
    const auto first_gap = tiles.size();
    tiles.insert(tiles.end(), gaps.begin(), gaps.end());
    MachineLayer out;
    out.system = wang_system(tiles);
    auto& sys = out.system;
    const std::string blank = m.symbols[static_cast<std::size_t>(m.blank)];
    const TileId rinit = sys.at("border:Rinit");
    for (TileId t = 0; t < sys.size(); ++t) {
        const auto& label = sys.tiles[t].label;
        if (label.starts_with("head:act:")) {
            out.actions.push_back(t);
        }
        if (label == "border:BL" || label == "border:B" || label == "border:BR") {
            out.bottom.push_back(t);
        }
        if (t >= first_gap) {
            out.gaps.push_back(t);
        }
        if (!label.starts_with("init:")) {
            continue;
        }
        const auto sym = label.substr(label.rfind(':') + 1);
        if (sym != "1" && sym != blank) {
            sys.forbidden.push_back(Pattern::single(t));
            continue;
        }
        for (TileId r = 0; r < sys.size(); ++r) {
            const bool next_is_end = r == rinit;
            if (sym == blank ? !next_is_end : next_is_end) {
                sys.forbidden.push_back(Pattern::horizontal(t, r));
            }
        }
    }
    return out;
}

TilingSystem transition_layer(std::size_t count) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < count; ++k) {
        labels.push_back("t" + std::to_string(k));
    }
    labels.emplace_back("none");
    return plain_system(labels);
}

// Coupling patterns over an n-component product.
class Coupling {
public:
    explicit Coupling(std::size_t n) : n_(n) {}

    using Demand = std::pair<std::size_t, TileId>;

    void forbid(std::vector<std::pair<std::pair<int, int>, std::vector<Demand>>> cells) {
        CouplingPattern p;
        for (const auto& [off, demands] : cells) {
            TupleCell c{off.first, off.second, std::vector<std::optional<TileId>>(n_)};
            for (const auto& [comp, tile] : demands) {
                c.tuple[comp] = tile;
            }
            p.push_back(std::move(c));
        }
        patterns_.push_back(std::move(p));
    }

    void forbid_here(std::vector<Demand> demands) { forbid({{{0, 0}, std::move(demands)}}); }

    const std::vector<CouplingPattern>& patterns() const { return patterns_; }

private:
    std::size_t n_;
    std::vector<CouplingPattern> patterns_;
};

Construction finish(const ConstructionSpec& spec, const std::vector<TilingSystem>& comps,
                    const std::vector<std::string>& names, const Coupling& coupling, ProductOptions options) {
    Construction out;
    out.system = layer_product(comps, coupling.patterns(), names, options);
    out.components = comps;
    out.layer_names = names;
    std::size_t comp_rules = 0;
    for (const auto& c : comps) {
        out.layer_sizes.push_back(c.size());
        comp_rules += c.forbidden.size();
    }
    const bool horizontal = spec.mode == ConstructionMode::Horizontal;
    std::ostringstream m;
    m << "mode=" << (horizontal ? "horizontal" : "total") << "\n";
    m << "base=" << spec.base << "\n";
    m << "aperiodic=" << spec.aperiodic.system.size() << " tiles, "
      << (spec.aperiodic.direction == Direction::East ? "East" : "NW") << "-deterministic (checked)\n";
    m << "machine=" << spec.machine.states.size() << " states, " << spec.machine.symbols.size() << " symbols, "
      << spec.machine.transitions.size() << " transitions\n";
    for (std::size_t i = 0; i < comps.size(); ++i) {
        m << "layer " << names[i] << "=" << comps[i].size() << "\n";
    }
    m << "tiles=" << out.system.size() << "\n";
    m << "component_rules=" << comp_rules << "\n";
    m << "coupling_rules=" << coupling.patterns().size() << "\n";
    m << "rules=" << out.system.forbidden.size() << "\n";
    m << "corners=gap tiles face oL/oR side colours; corners sit beside the gap and on the seam rows\n";
    m << "offset=" << period_offset << "\n";
    out.manifest = m.str();
    out.system.metadata["construction"] = horizontal ? "horizontal" : "total";
    out.system.metadata["offset"] = std::to_string(period_offset);
    out.system.metadata["base"] = std::to_string(spec.base);
    return out;
}

} // namespace

DeterminismReport check_east_deterministic(const TilingSystem& sys) {
    return check_window(sys, {{{0, 0}, {0, 1}, {1, 0}}});
}

DeterminismReport check_nw_deterministic(const TilingSystem& sys) {
    return check_window(sys, {{{0, 0}, {1, 1}, {1, 0}}});
}

TilingSystem shear(const TilingSystem& sys) {
    TilingSystem out = sys;
    out.forbidden.clear();
    for (const auto& p : sys.forbidden) {
        std::vector<PatternCell> cells(p.cells().begin(), p.cells().end());
        for (auto& c : cells) {
            c.dx -= c.dy;
        }
        out.forbidden.emplace_back(std::move(cells));
    }
    return out;
}

DeterministicTileset certify(TilingSystem sys, Direction dir) {
    const bool ok = dir == Direction::East ? check_east_deterministic(sys).deterministic
                                           : check_nw_deterministic(sys).deterministic;
    return {std::move(sys), dir, ok};
}

DeterministicTileset east_from_nw(const DeterministicTileset& nw) {
    return certify(shear(nw.system), Direction::East);
}

DeterministicTileset kari_tileset() {
    // Edge colours in the order west, north, south, east.
    static const int edges[16][4] = {{1, 1, 2, 2}, {1, 5, 4, 1}, {2, 3, 6, 2}, {2, 4, 6, 1}, {2, 5, 3, 1}, {3, 2, 2, 6},
                                     {3, 3, 4, 4}, {3, 4, 4, 5}, {3, 6, 4, 3}, {4, 2, 1, 6}, {4, 3, 5, 4}, {4, 4, 5, 5},
                                     {5, 1, 1, 4}, {5, 2, 1, 3}, {6, 3, 3, 4}, {6, 6, 3, 3}};
    std::vector<WangTile> tiles;
    for (int i = 0; i < 16; ++i) {
        const auto* e = edges[i];
        tiles.push_back({"k" + std::to_string(i), std::to_string(e[0]), std::to_string(e[1]), std::to_string(e[2]),
                         std::to_string(e[3])});
    }
    return certify(wang_system(tiles), Direction::NW);
}

DeterministicTileset mock_tileset(Direction dir) { return certify(fixtures::stripes(), dir); }

TileId CounterLayer::digit(int d, int carry, bool r) const {
    return static_cast<TileId>((d * 2 + carry) * 2 + (r ? 1 : 0));
}

TileId CounterLayer::delimiter(int carry, bool r) const {
    return static_cast<TileId>(4 * base + carry * 2 + (r ? 1 : 0));
}

bool CounterLayer::is_delimiter(TileId t) const { return t >= static_cast<TileId>(4 * base); }

bool CounterLayer::is_r(TileId t) const { return (t & 1U) != 0; }

int CounterLayer::value(TileId t) const { return is_delimiter(t) ? -1 : static_cast<int>(t / 4); }

CounterLayer counter_tiles(int c) {
    if (c < 2) {
        throw InvalidDimensions("counter base must be at least 2");
    }
    CounterLayer out;
    out.base = c;
    auto& s = out.system;
    for (int d = 0; d < c; ++d) {
        for (int k = 0; k < 2; ++k) {
            for (const char* mk : {"B", "R"}) {
                s.add_tile(std::to_string(d) + "+" + std::to_string(k) + mk);
            }
        }
    }
    for (int k = 0; k < 2; ++k) {
        for (const char* mk : {"B", "R"}) {
            s.add_tile("gray+" + std::to_string(k) + mk);
        }
    }
    const auto n = static_cast<TileId>(s.size());
    auto carry = [&](TileId t) { return static_cast<int>((t >> 1) & 1U); };
    // Carry sent to the left neighbour; delimiters always inject one.
    auto carry_out = [&](TileId t) {
        return out.is_delimiter(t) || out.value(t) + carry(t) >= c ? 1 : 0;
    };
    for (TileId t = 0; t < n; ++t) {
        if (!out.is_delimiter(t) && out.is_r(t) && out.value(t) != 0) {
            s.forbidden.push_back(Pattern::single(t));
        }
    }
    for (TileId a = 0; a < n; ++a) {
        for (TileId b = 0; b < n; ++b) {
            if (carry(a) != carry_out(b) || out.is_r(a) != out.is_r(b)) {
                s.forbidden.push_back(Pattern::horizontal(a, b));
            }
            bool ok;
            if (out.is_delimiter(a)) {
                ok = out.is_delimiter(b) && out.is_r(b) == (carry(a) == 1);
            } else {
                ok = !out.is_delimiter(b) && out.value(b) == (out.value(a) + carry(a)) % c;
            }
            if (!ok) {
                s.forbidden.push_back(Pattern::vertical(a, b));
            }
        }
    }
    return out;
}

Construction build_horizontal_construction(const ConstructionSpec& spec, ProductOptions options) {
    require_spec(spec, Direction::East);
    if (spec.mode != ConstructionMode::Horizontal) {
        throw InvalidMachine("spec mode is not horizontal");
    }
    const auto& whites = spec.aperiodic.system;
    const auto nw = static_cast<TileId>(whites.size());

    // A: whites, then gray; no white above or below gray.
    auto labels = white_labels(spec.aperiodic);
    labels.emplace_back("gray");
    TilingSystem a = plain_system(labels);
    a.forbidden = whites.forbidden;
    const TileId gray = nw;
    for (TileId w = 0; w < nw; ++w) {
        a.forbidden.push_back(Pattern::vertical(w, gray));
        a.forbidden.push_back(Pattern::vertical(gray, w));
    }

    const auto counter = counter_tiles(spec.base);
    TilingSystem t = plain_system(white_labels(spec.aperiodic));
    constant_along(t, 1, 0);

    auto ml = machine_layer(spec.machine, {{"gap", "oR", "gv", "gv", "oL"}});
    const TileId gap = ml.gaps[0];

    TilingSystem s = transition_layer(ml.actions.size());
    constant_along(s, 1, 0);

    enum : std::size_t { A, D, T, M, S };
    Coupling cp(5);
    for (TileId d = 0; d < counter.system.size(); ++d) {
        if (!counter.is_delimiter(d)) {
            cp.forbid_here({{A, gray}, {D, d}});
        } else {
            for (TileId w = 0; w < nw; ++w) {
                cp.forbid_here({{A, w}, {D, d}});
            }
        }
    }
    for (TileId mt = 0; mt < ml.system.size(); ++mt) {
        if (mt != gap) {
            cp.forbid_here({{A, gray}, {M, mt}});
        }
    }
    for (TileId w = 0; w < nw; ++w) {
        cp.forbid_here({{A, w}, {M, gap}});
    }
    // Machine rectangles start on R rows and only there.
    for (TileId d = 0; d < counter.system.size(); ++d) {
        for (TileId mt = 0; mt < ml.system.size(); ++mt) {
            const bool bottom = std::find(ml.bottom.begin(), ml.bottom.end(), mt) != ml.bottom.end();
            if (mt != gap && bottom != counter.is_r(d)) {
                cp.forbid_here({{D, d}, {M, mt}});
            }
        }
    }
    for (TileId w = 0; w < nw; ++w) {
        for (TileId w2 = 0; w2 < nw; ++w2) {
            if (w != w2) {
                cp.forbid({{{0, 0}, {{A, gray}}}, {{1, 0}, {{A, w}, {T, w2}}}});
            }
        }
    }
    for (std::size_t k = 0; k < ml.actions.size(); ++k) {
        for (TileId v = 0; v < s.size(); ++v) {
            if (v != k) {
                cp.forbid_here({{M, ml.actions[k]}, {S, v}});
            }
        }
    }
    return finish(spec, {a, counter.system, t, ml.system, s}, {"A", "D", "T", "M", "S"}, cp, options);
}

Construction build_total_construction(const ConstructionSpec& spec, ProductOptions options) {
    require_spec(spec, Direction::NW);
    if (spec.mode != ConstructionMode::Total) {
        throw InvalidMachine("spec mode is not total");
    }
    const auto& whites = spec.aperiodic.system;
    const auto nw = static_cast<TileId>(whites.size());

    auto labels = white_labels(spec.aperiodic);
    for (const char* g : {"X", "H", "V"}) {
        labels.emplace_back(g);
    }
    TilingSystem a = plain_system(labels);
    a.forbidden = whites.forbidden;
    const TileId X = nw;
    const TileId H = nw + 1;
    const TileId V = nw + 2;
    const auto na = static_cast<TileId>(a.size());
    auto vertical_line = [&](TileId t) { return t == X || t == V; };
    auto horizontal_line = [&](TileId t) { return t == X || t == H; };
    for (TileId p = 0; p < na; ++p) {
        for (TileId q = 0; q < na; ++q) {
            if (vertical_line(p) != vertical_line(q)) {
                a.forbidden.push_back(Pattern::vertical(p, q));
            }
            if (horizontal_line(p) != horizontal_line(q)) {
                a.forbidden.push_back(Pattern::horizontal(p, q));
            }
        }
    }

    TilingSystem d = plain_system({"0", "1"});
    d.forbidden.emplace_back(std::vector<PatternCell>{{0, 0, 1, -1}, {1, 1, 0, -1}});
    d.forbidden.emplace_back(std::vector<PatternCell>{{0, 0, 0, -1}, {1, 1, 1, -1}});

    std::vector<TilingSystem> copies(4, plain_system(white_labels(spec.aperiodic)));
    constant_along(copies[0], 1, 0);
    constant_along(copies[1], 1, 1);
    constant_along(copies[2], 0, 1);
    constant_along(copies[3], 1, 1);

    auto ml = machine_layer(spec.machine, {{"gap:X", "gh", "gv", "gv", "gh"},
                                           {"gap:H", "gh", "seam", "seam", "gh"},
                                           {"gap:V", "oR", "gv", "gv", "oL"}});

    TilingSystem s = transition_layer(ml.actions.size());
    constant_along(s, 1, 0);
    TilingSystem s2 = s;
    s2.forbidden.clear();
    constant_along(s2, 1, 1);

    enum : std::size_t { A, D, T1, T2, T3, T4, M, S, S2 };
    Coupling cp(9);
    // The crossing carries the signal, the other grays do not.
    cp.forbid_here({{A, X}, {D, 0}});
    cp.forbid_here({{A, H}, {D, 1}});
    cp.forbid_here({{A, V}, {D, 1}});
    const std::array<TileId, 3> grays{X, H, V};
    for (std::size_t g = 0; g < 3; ++g) {
        for (TileId mt = 0; mt < ml.system.size(); ++mt) {
            if (mt != ml.gaps[g]) {
                cp.forbid_here({{A, grays[g]}, {M, mt}});
            }
        }
        for (TileId w = 0; w < nw; ++w) {
            cp.forbid_here({{A, w}, {M, ml.gaps[g]}});
        }
    }
    for (TileId w = 0; w < nw; ++w) {
        for (TileId w2 = 0; w2 < nw; ++w2) {
            if (w == w2) {
                continue;
            }
            for (const TileId g : {X, V}) {
                cp.forbid({{{0, 0}, {{A, g}}}, {{1, 0}, {{A, w}, {T1, w2}}}});
                cp.forbid({{{0, 0}, {{A, g}}}, {{1, 0}, {{A, w}, {T2, w2}}}});
            }
            for (const TileId g : {X, H}) {
                cp.forbid({{{0, 1}, {{A, g}}}, {{0, 0}, {{A, w}, {T3, w2}}}});
                cp.forbid({{{0, 1}, {{A, g}}}, {{0, 0}, {{A, w}, {T4, w2}}}});
            }
        }
    }
    for (std::size_t k = 0; k < ml.actions.size(); ++k) {
        for (TileId v = 0; v < s.size(); ++v) {
            if (v != k) {
                cp.forbid_here({{M, ml.actions[k]}, {S, v}});
            }
        }
    }
    for (TileId u = 0; u < s.size(); ++u) {
        for (TileId v = 0; v < s.size(); ++v) {
            if (u == v) {
                continue;
            }
            for (const TileId g : {X, V}) {
                cp.forbid({{{0, 0}, {{A, g}}}, {{1, 0}, {{S, u}, {S2, v}}}});
            }
        }
    }
    std::vector<TilingSystem> comps{a, d, copies[0], copies[1], copies[2], copies[3], ml.system, s, s2};
    return finish(spec, comps, {"A", "D", "T1", "T2", "T3", "T4", "M", "S", "S2"}, cp, options);
}

Construction build_construction(const ConstructionSpec& spec, ProductOptions options) {
    return spec.mode == ConstructionMode::Horizontal ? build_horizontal_construction(spec, options)
                                                     : build_total_construction(spec, options);
}

TilingSystem diagonal_signal_system() {
    TilingSystem s = plain_system({"w0", "w1", "X", "H", "V"});
    const TileId X = 2;
    const TileId H = 3;
    const TileId V = 4;
    auto vertical_line = [&](TileId t) { return t == X || t == V; };
    auto horizontal_line = [&](TileId t) { return t == X || t == H; };
    auto carries = [&](TileId t) { return t == 1 || t == X; };
    for (TileId p = 0; p < 5; ++p) {
        for (TileId q = 0; q < 5; ++q) {
            if (vertical_line(p) != vertical_line(q)) {
                s.forbidden.push_back(Pattern::vertical(p, q));
            }
            if (horizontal_line(p) != horizontal_line(q)) {
                s.forbidden.push_back(Pattern::horizontal(p, q));
            }
            if (carries(p) != carries(q)) {
                s.forbidden.emplace_back(std::vector<PatternCell>{{0, 0, p, -1}, {1, 1, q, -1}});
            }
        }
    }
    return s;
}

} // namespace tileperiod
