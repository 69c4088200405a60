#include "tileperiod/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tileperiod::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
    throw FormatError(where + ": " + msg);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        int line = 1;
        int column = 1;
        const auto end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw FormatError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                              "invalid JSON",
                          line, column);
    }
}

const json& field(const json& j, const std::string& where, const char* key) {
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        fail(where, std::string("missing field \"") + key + "\"");
    }
    return *it;
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) {
        fail(where, "expected a string");
    }
    return j.get<std::string>();
}

int as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) {
        fail(where, "expected an integer");
    }
    return j.get<int>();
}

const json& as_array(const json& j, const std::string& where) {
    if (!j.is_array()) {
        fail(where, "expected an array");
    }
    return j;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    std::vector<std::string> out;
    std::size_t i = 0;
    for (const auto& e : as_array(j, where)) {
        out.push_back(as_string(e, where + "[" + std::to_string(i++) + "]"));
    }
    return out;
}

std::pair<int, int> parse_offset(const std::string& key, const std::string& where) {
    const auto comma = key.find(',');
    try {
        if (comma == std::string::npos) {
            throw std::invalid_argument(key);
        }
        std::size_t used = 0;
        const int dx = std::stoi(key.substr(0, comma), &used);
        if (used != comma) {
            throw std::invalid_argument(key);
        }
        const auto rest = key.substr(comma + 1);
        const int dy = std::stoi(rest, &used);
        if (used != rest.size()) {
            throw std::invalid_argument(key);
        }
        return {dx, dy};
    } catch (const std::exception&) {
        fail(where, "offset key \"" + key + "\" is not of the form \"dx,dy\"");
    }
}

} // namespace

TilingSystem parse_system(std::string_view text) {
    const json doc = parse_json(text);
    TilingSystem sys;
    std::map<std::string, TileId> ids;
    std::vector<std::map<std::string, TileId>> layer_ids;

    if (doc.is_object() && doc.contains("layers")) {
        std::size_t i = 0;
        for (const auto& l : as_array(doc["layers"], "layers")) {
            const auto where = "layers[" + std::to_string(i++) + "]";
            Layer layer{as_string(field(l, where, "name"), where + ".name"),
                        string_list(field(l, where, "labels"), where + ".labels")};
            std::map<std::string, TileId> m;
            for (TileId k = 0; k < layer.labels.size(); ++k) {
                if (!m.emplace(layer.labels[k], k).second) {
                    fail(where, "duplicate label \"" + layer.labels[k] + "\"");
                }
            }
            layer_ids.push_back(std::move(m));
            sys.layers.push_back(std::move(layer));
        }
    }

    std::size_t i = 0;
    for (const auto& t : as_array(field(doc, "system", "tiles"), "tiles")) {
        const auto where = "tiles[" + std::to_string(i++) + "]";
        Tile tile;
        tile.id = static_cast<TileId>(sys.tiles.size());
        if (t.is_string()) {
            tile.label = t.get<std::string>();
        } else {
            tile.label = as_string(field(t, where, "label"), where + ".label");
            if (t.contains("layers")) {
                const auto parts = string_list(t["layers"], where + ".layers");
                if (parts.size() != sys.layers.size()) {
                    fail(where, "layer tuple has " + std::to_string(parts.size()) + " entries, expected " +
                                    std::to_string(sys.layers.size()));
                }
                for (std::size_t k = 0; k < parts.size(); ++k) {
                    const auto it = layer_ids[k].find(parts[k]);
                    if (it == layer_ids[k].end()) {
                        fail(where, "unknown label \"" + parts[k] + "\" in layer " + sys.layers[k].name);
                    }
                    tile.layers.push_back(it->second);
                }
            }
        }
        if (!ids.emplace(tile.label, tile.id).second) {
            fail(where, "duplicate tile label \"" + tile.label + "\"");
        }
        sys.tiles.push_back(std::move(tile));
    }
    if (sys.tiles.empty()) {
        fail("tiles", "a system needs at least one tile");
    }

    auto tile_id = [&](const std::string& label, const std::string& where) {
        const auto it = ids.find(label);
        if (it == ids.end()) {
            fail(where, "unknown tile \"" + label + "\"");
        }
        return it->second;
    };

    const bool has_forbidden = doc.contains("forbidden");
    const bool has_allowed = doc.contains("allowed_pairs");
    if (has_forbidden && has_allowed) {
        fail("system", "\"forbidden\" and \"allowed_pairs\" are mutually exclusive");
    }
    if (has_forbidden) {
        i = 0;
        for (const auto& p : as_array(doc["forbidden"], "forbidden")) {
            const auto where = "forbidden[" + std::to_string(i++) + "]";
            if (!p.is_object() || p.empty()) {
                fail(where, "expected a non-empty object of \"dx,dy\" keys");
            }
            std::vector<PatternCell> cells;
            for (const auto& [key, value] : p.items()) {
                const auto cw = where + "[\"" + key + "\"]";
                const auto [dx, dy] = parse_offset(key, cw);
                const json demands = value.is_array() ? value : json::array({value});
                if (demands.empty()) {
                    fail(cw, "empty demand list");
                }
                for (const auto& d : demands) {
                    if (d.is_string()) {
                        cells.push_back({dx, dy, tile_id(d.get<std::string>(), cw), -1});
                        continue;
                    }
                    const auto lname = as_string(field(d, cw, "layer"), cw + ".layer");
                    const auto lbl = as_string(field(d, cw, "label"), cw + ".label");
                    std::size_t k = 0;
                    while (k < sys.layers.size() && sys.layers[k].name != lname) {
                        ++k;
                    }
                    if (k == sys.layers.size()) {
                        fail(cw, "unknown layer \"" + lname + "\"");
                    }
                    const auto it = layer_ids[k].find(lbl);
                    if (it == layer_ids[k].end()) {
                        fail(cw, "unknown label \"" + lbl + "\" in layer " + lname);
                    }
                    cells.push_back({dx, dy, it->second, static_cast<int>(k)});
                }
            }
            sys.forbidden.emplace_back(std::move(cells));
        }
    }
    if (has_allowed) {
        const auto& ap = doc["allowed_pairs"];
        if (!ap.is_object()) {
            fail("allowed_pairs", "expected an object with \"horizontal\" and/or \"vertical\"");
        }
        for (const auto& [axis, pairs] : ap.items()) {
            const auto where = "allowed_pairs." + axis;
            if (axis != "horizontal" && axis != "vertical") {
                fail(where, "unknown axis");
            }
            std::set<std::pair<TileId, TileId>> allowed;
            std::size_t k = 0;
            for (const auto& pr : as_array(pairs, where)) {
                const auto pw = where + "[" + std::to_string(k++) + "]";
                const auto two = string_list(pr, pw);
                if (two.size() != 2) {
                    fail(pw, "expected a pair of labels");
                }
                allowed.emplace(tile_id(two[0], pw), tile_id(two[1], pw));
            }
            const auto n = static_cast<TileId>(sys.tiles.size());
            for (TileId a = 0; a < n; ++a) {
                for (TileId b = 0; b < n; ++b) {
                    if (!allowed.contains({a, b})) {
                        sys.forbidden.push_back(axis == "horizontal" ? Pattern::horizontal(a, b)
                                                                     : Pattern::vertical(a, b));
                    }
                }
            }
        }
    }
    if (doc.contains("metadata")) {
        const auto& md = doc["metadata"];
        if (!md.is_object()) {
            fail("metadata", "expected an object");
        }
        for (const auto& [k, v] : md.items()) {
            sys.metadata[k] = as_string(v, "metadata." + k);
        }
    }
    for (const auto& d : validate_system(sys)) {
        fail("system", d.code + ": " + d.message);
    }
    return sys;
}

std::string dump_system(const TilingSystem& sys) {
    json doc = json::object();
    if (!sys.layers.empty()) {
        json layers = json::array();
        for (const auto& l : sys.layers) {
            layers.push_back({{"name", l.name}, {"labels", l.labels}});
        }
        doc["layers"] = std::move(layers);
    }
    json tiles = json::array();
    for (const auto& t : sys.tiles) {
        if (sys.layers.empty()) {
            tiles.push_back(t.label);
            continue;
        }
        json parts = json::array();
        for (std::size_t k = 0; k < t.layers.size(); ++k) {
            parts.push_back(sys.layers[k].labels[t.layers[k]]);
        }
        tiles.push_back({{"label", t.label}, {"layers", std::move(parts)}});
    }
    doc["tiles"] = std::move(tiles);
    json forbidden = json::array();
    for (const auto& p : sys.forbidden) {
        std::map<std::string, json> cells;
        for (const auto& c : p.cells()) {
            const auto key = std::to_string(c.dx) + "," + std::to_string(c.dy);
            json d = c.layer < 0 ? json(sys.tiles[c.tile].label)
                                 : json{{"layer", sys.layers[static_cast<std::size_t>(c.layer)].name},
                                        {"label", sys.layers[static_cast<std::size_t>(c.layer)].labels[c.tile]}};
            auto& slot = cells[key];
            if (slot.is_null()) {
                slot = std::move(d);
            } else {
                if (!slot.is_array()) {
                    slot = json::array({slot});
                }
                slot.push_back(std::move(d));
            }
        }
        // Layered demands are always written as lists so a lone one reads back
        // the same way.
        json obj = json::object();
        for (auto& [k, v] : cells) {
            obj[k] = v.is_object() ? json::array({v}) : v;
        }
        forbidden.push_back(std::move(obj));
    }
    doc["forbidden"] = std::move(forbidden);
    doc["metadata"] = sys.metadata;
    return doc.dump(1) + "\n";
}

TuringMachine parse_machine(std::string_view text) {
    const json doc = parse_json(text);
    TuringMachine m;
    m.states = string_list(field(doc, "machine", "states"), "states");
    if (m.states.empty()) {
        fail("states", "a machine needs at least one state");
    }
    auto state_of = [&](const std::string& name, const std::string& where) {
        const auto it = std::find(m.states.begin(), m.states.end(), name);
        if (it == m.states.end()) {
            fail(where, "unknown state \"" + name + "\"");
        }
        return static_cast<int>(it - m.states.begin());
    };
    m.initial = state_of(as_string(field(doc, "machine", "initial"), "initial"), "initial");
    const auto halting = string_list(field(doc, "machine", "halting"), "halting");
    for (const auto& h : halting) {
        m.halting.push_back(state_of(h, "halting"));
    }
    const auto blank = as_string(field(doc, "machine", "blank"), "blank");
    const auto& trans = as_array(field(doc, "machine", "transitions"), "transitions");

    // Symbols: declared list, or first appearance among blank, input and
    // transitions.
    if (doc.contains("symbols")) {
        m.symbols = string_list(doc["symbols"], "symbols");
    } else {
        auto add = [&](const std::string& s) {
            if (std::find(m.symbols.begin(), m.symbols.end(), s) == m.symbols.end()) {
                m.symbols.push_back(s);
            }
        };
        add(blank);
        if (doc.contains("input")) {
            for (const auto& s : string_list(doc["input"], "input")) {
                add(s);
            }
        }
        std::size_t k = 0;
        for (const auto& t : trans) {
            const auto where = "transitions[" + std::to_string(k++) + "]";
            const auto parts = string_list(t, where);
            if (parts.size() == 5) {
                add(parts[1]);
                add(parts[3]);
            }
        }
    }
    auto symbol_of = [&](const std::string& name, const std::string& where) {
        const auto it = std::find(m.symbols.begin(), m.symbols.end(), name);
        if (it == m.symbols.end()) {
            fail(where, "unknown symbol \"" + name + "\"");
        }
        return static_cast<int>(it - m.symbols.begin());
    };
    m.blank = symbol_of(blank, "blank");
    if (doc.contains("input")) {
        for (const auto& s : string_list(doc["input"], "input")) {
            m.input.push_back(symbol_of(s, "input"));
        }
    } else {
        for (int a = 0; a < static_cast<int>(m.symbols.size()); ++a) {
            if (a != m.blank) {
                m.input.push_back(a);
            }
        }
    }

    std::map<int, int> stay_state;
    std::vector<std::pair<int, int>> stays;
    std::size_t k = 0;
    for (const auto& t : trans) {
        const auto where = "transitions[" + std::to_string(k++) + "]";
        const auto parts = string_list(t, where);
        if (parts.size() != 5) {
            fail(where, "expected [state, read, next state, write, move]");
        }
        Transition tr{state_of(parts[0], where), symbol_of(parts[1], where), state_of(parts[2], where),
                      symbol_of(parts[3], where), Move::Right};
        if (parts[4] == "L") {
            tr.move = Move::Left;
        } else if (parts[4] == "S") {
            auto [it, inserted] = stay_state.try_emplace(tr.to, 0);
            if (inserted) {
                std::string name = m.states[static_cast<std::size_t>(tr.to)] + "~stay";
                while (std::find(m.states.begin(), m.states.end(), name) != m.states.end()) {
                    name += "~";
                }
                m.states.push_back(name);
                it->second = static_cast<int>(m.states.size() - 1);
                stays.emplace_back(it->second, tr.to);
            }
            tr.to = it->second;
        } else if (parts[4] != "R") {
            fail(where, "move must be \"L\", \"R\" or \"S\"");
        }
        m.transitions.push_back(tr);
    }
    for (const auto& [mid, to] : stays) {
        for (int a = 0; a < static_cast<int>(m.symbols.size()); ++a) {
            m.transitions.push_back({mid, a, to, a, Move::Left});
        }
    }
    try {
        validate_machine(m);
    } catch (const InvalidMachine& e) {
        fail("machine", e.what());
    }
    return m;
}

std::string dump_machine(const TuringMachine& m) {
    json doc;
    doc["states"] = m.states;
    doc["initial"] = m.states[static_cast<std::size_t>(m.initial)];
    json halting = json::array();
    for (const int h : m.halting) {
        halting.push_back(m.states[static_cast<std::size_t>(h)]);
    }
    doc["halting"] = std::move(halting);
    doc["symbols"] = m.symbols;
    doc["blank"] = m.symbols[static_cast<std::size_t>(m.blank)];
    json input = json::array();
    for (const int a : m.input) {
        input.push_back(m.symbols[static_cast<std::size_t>(a)]);
    }
    doc["input"] = std::move(input);
    json trans = json::array();
    for (const auto& t : m.transitions) {
        trans.push_back({m.states[static_cast<std::size_t>(t.from)], m.symbols[static_cast<std::size_t>(t.read)],
                         m.states[static_cast<std::size_t>(t.to)], m.symbols[static_cast<std::size_t>(t.write)],
                         t.move == Move::Left ? "L" : "R"});
    }
    doc["transitions"] = std::move(trans);
    return doc.dump(1) + "\n";
}

Witness make_witness(const TilingSystem& sys, std::string mode, int period, const RegionAssignment& region) {
    Witness w{std::move(mode), period, region, std::vector<std::string>(sys.size())};
    for (const auto t : region.cells) {
        w.labels[t] = sys.tiles[t].label;
    }
    return w;
}

Witness parse_witness(std::string_view text) {
    const json doc = parse_json(text);
    Witness w;
    w.mode = as_string(field(doc, "witness", "mode"), "mode");
    w.period = as_int(field(doc, "witness", "period"), "period");
    const int width = as_int(field(doc, "witness", "width"), "width");
    const int height = as_int(field(doc, "witness", "height"), "height");
    if (width <= 0 || height <= 0) {
        fail("witness", "width and height must be positive");
    }
    const auto& wx = field(doc, "witness", "wrap_x");
    const auto& wy = field(doc, "witness", "wrap_y");
    if (!wx.is_boolean() || !wy.is_boolean()) {
        fail("witness", "wrap_x and wrap_y must be booleans");
    }
    w.region = RegionAssignment(width, height, wx.get<bool>(), wy.get<bool>());
    const auto& tiles = field(doc, "witness", "tiles");
    if (!tiles.is_object()) {
        fail("tiles", "expected an object from tile id to label");
    }
    std::map<TileId, std::string> legend;
    for (const auto& [k, v] : tiles.items()) {
        TileId id = 0;
        try {
            std::size_t used = 0;
            const auto parsed = std::stoul(k, &used);
            if (used != k.size()) {
                throw std::invalid_argument(k);
            }
            id = static_cast<TileId>(parsed);
        } catch (const std::exception&) {
            fail("tiles", "key \"" + k + "\" is not a tile id");
        }
        legend[id] = as_string(v, "tiles." + k);
    }
    const auto& rows = as_array(field(doc, "witness", "rows"), "rows");
    if (rows.size() != static_cast<std::size_t>(height)) {
        fail("rows", "expected " + std::to_string(height) + " rows");
    }
    for (int y = 0; y < height; ++y) {
        const auto where = "rows[" + std::to_string(y) + "]";
        const auto& row = as_array(rows[static_cast<std::size_t>(y)], where);
        if (row.size() != static_cast<std::size_t>(width)) {
            fail(where, "expected " + std::to_string(width) + " cells");
        }
        for (int x = 0; x < width; ++x) {
            const int id = as_int(row[static_cast<std::size_t>(x)], where);
            if (id < 0 || !legend.contains(static_cast<TileId>(id))) {
                fail(where, "tile id " + std::to_string(id) + " missing from \"tiles\"");
            }
            w.region.at(x, y) = static_cast<TileId>(id);
        }
    }
    const TileId max_id = legend.empty() ? 0 : legend.rbegin()->first;
    w.labels.assign(static_cast<std::size_t>(max_id) + 1, "");
    for (const auto& [id, label] : legend) {
        w.labels[id] = label;
    }
    return w;
}

std::string dump_witness(const Witness& w) {
    json doc;
    doc["mode"] = w.mode;
    doc["period"] = w.period;
    doc["width"] = w.region.width;
    doc["height"] = w.region.height;
    doc["wrap_x"] = w.region.wrap_x;
    doc["wrap_y"] = w.region.wrap_y;
    json tiles = json::object();
    for (const auto t : w.region.cells) {
        tiles[std::to_string(t)] = w.labels.at(t);
    }
    doc["tiles"] = std::move(tiles);
    json rows = json::array();
    for (int y = 0; y < w.region.height; ++y) {
        json row = json::array();
        for (int x = 0; x < w.region.width; ++x) {
            row.push_back(w.region.at(x, y));
        }
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(1) + "\n";
}

ConstructionSpec parse_construction_spec(std::string_view text) {
    const json doc = parse_json(text);
    ConstructionSpec spec;
    spec.machine = parse_machine(field(doc, "spec", "machine").dump());
    spec.base = as_int(field(doc, "spec", "base"), "base");
    const auto mode = as_string(field(doc, "spec", "mode"), "mode");
    if (mode == "horizontal") {
        spec.mode = ConstructionMode::Horizontal;
    } else if (mode == "total") {
        spec.mode = ConstructionMode::Total;
    } else {
        fail("mode", "expected \"horizontal\" or \"total\"");
    }
    const auto& ap = field(doc, "spec", "aperiodic");
    if (ap.is_string()) {
        const auto name = ap.get<std::string>();
        if (name == "kari") {
            spec.aperiodic = kari_tileset();
        } else if (name == "kari-east") {
            spec.aperiodic = east_from_nw(kari_tileset());
        } else if (name == "mock-east") {
            spec.aperiodic = mock_tileset(Direction::East);
        } else if (name == "mock-nw") {
            spec.aperiodic = mock_tileset(Direction::NW);
        } else {
            fail("aperiodic", "unknown tile set \"" + name + "\"");
        }
    } else {
        spec.aperiodic.system = parse_system(field(ap, "aperiodic", "system").dump());
        const auto dir = as_string(field(ap, "aperiodic", "direction"), "aperiodic.direction");
        if (dir == "East") {
            spec.aperiodic.direction = Direction::East;
        } else if (dir == "NW") {
            spec.aperiodic.direction = Direction::NW;
        } else {
            fail("aperiodic.direction", "expected \"East\" or \"NW\"");
        }
        const auto& cert = field(ap, "aperiodic", "certified");
        if (!cert.is_boolean()) {
            fail("aperiodic.certified", "expected a boolean");
        }
        spec.aperiodic.certified = cert.get<bool>();
    }
    return spec;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot write " + path);
    }
    out << contents;
}

} // namespace tileperiod::io
