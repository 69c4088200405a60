#include "tileperiod/tm.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace tileperiod {

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) {
        return false;
    }
    return std::none_of(s.begin(), s.end(), [](char c) {
        return c == ':' || c == ',' || c == '|' || c == '(' || c == ')' || c == '>' || c == '<' ||
               static_cast<unsigned char>(c) <= ' ';
    });
}

template <class T>
int index_of(const std::vector<T>& v, std::string_view name, const char* what) {
    const auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end()) {
        throw InvalidMachine(std::string("unknown ") + what + " '" + std::string(name) + "'");
    }
    return static_cast<int>(it - v.begin());
}

std::string sym_color(const std::string& a) { return "s:" + a; }
std::string head_color(const std::string& q, const std::string& a) { return "h:" + q + "," + a; }
std::string right_signal(const std::string& q) { return "sig:" + q + ">"; }
std::string left_signal(const std::string& q) { return "sig:<" + q; }
const std::string none = "-";

} // namespace

bool TuringMachine::is_halting(int q) const { return std::find(halting.begin(), halting.end(), q) != halting.end(); }

int TuringMachine::state(std::string_view name) const { return index_of(states, name, "state"); }

int TuringMachine::symbol(std::string_view name) const { return index_of(symbols, name, "symbol"); }

void validate_machine(const TuringMachine& m) {
    const int ns = static_cast<int>(m.states.size());
    const int na = static_cast<int>(m.symbols.size());
    if (ns == 0) {
        throw InvalidMachine("machine has no states");
    }
    if (na == 0) {
        throw InvalidMachine("machine has no tape symbols");
    }
    for (const auto* names : {&m.states, &m.symbols}) {
        std::set<std::string> seen;
        for (const auto& s : *names) {
            if (!valid_name(s)) {
                throw InvalidMachine("invalid name '" + s + "'");
            }
            if (!seen.insert(s).second) {
                throw InvalidMachine("duplicate name '" + s + "'");
            }
        }
    }
    if (m.initial < 0 || m.initial >= ns) {
        throw InvalidMachine("initial state out of range");
    }
    if (m.blank < 0 || m.blank >= na) {
        throw InvalidMachine("blank symbol out of range");
    }
    for (const int h : m.halting) {
        if (h < 0 || h >= ns) {
            throw InvalidMachine("halting state out of range");
        }
    }
    for (const int a : m.input) {
        if (a < 0 || a >= na) {
            throw InvalidMachine("input symbol out of range");
        }
    }
    for (const auto& t : m.transitions) {
        if (t.from < 0 || t.from >= ns || t.to < 0 || t.to >= ns) {
            throw InvalidMachine("transition mentions an undeclared state");
        }
        if (t.read < 0 || t.read >= na || t.write < 0 || t.write >= na) {
            throw InvalidMachine("transition mentions an undeclared symbol");
        }
        if (m.is_halting(t.from)) {
            throw InvalidMachine("transition leaves halting state '" + m.states[static_cast<std::size_t>(t.from)] + "'");
        }
    }
}

Word word(std::string_view chars) {
    Word w;
    for (const char c : chars) {
        w.emplace_back(1, c);
    }
    return w;
}

bool accepts_within(const TuringMachine& m, const Word& input, RunBound b, std::uint64_t max_configs) {
    validate_machine(m);
    if (b.time < 1 || b.space < 1) {
        throw InvalidDimensions("run bound must be positive");
    }
    std::vector<int> tape(static_cast<std::size_t>(b.space), m.blank);
    for (std::size_t i = 0; i < input.size(); ++i) {
        const auto it = std::find(m.symbols.begin(), m.symbols.end(), input[i]);
        const int a = static_cast<int>(it - m.symbols.begin());
        if (it == m.symbols.end() || std::find(m.input.begin(), m.input.end(), a) == m.input.end()) {
            throw AlphabetMismatch("'" + input[i] + "' is not an input symbol");
        }
        if (i < tape.size()) {
            tape[i] = a;
        }
    }
    if (input.size() > static_cast<std::size_t>(b.space)) {
        return false;
    }
    using Config = std::tuple<int, int, std::vector<int>>;
    std::set<Config> frontier{{m.initial, 0, tape}};
    std::uint64_t seen = 1;
    for (int step = 0;; ++step) {
        for (const auto& [q, pos, cells] : frontier) {
            if (m.is_halting(q)) {
                return true;
            }
        }
        if (step + 1 >= b.time) {
            return false;
        }
        std::set<Config> next;
        for (const auto& [q, pos, cells] : frontier) {
            const int a = cells[static_cast<std::size_t>(pos)];
            for (const auto& t : m.transitions) {
                if (t.from != q || t.read != a) {
                    continue;
                }
                const int np = pos + (t.move == Move::Right ? 1 : -1);
                if (np < 0 || np >= b.space) {
                    continue;
                }
                auto nc = cells;
                nc[static_cast<std::size_t>(pos)] = t.write;
                next.emplace(t.to, np, std::move(nc));
            }
        }
        seen += next.size();
        if (seen > max_configs) {
            throw ResourceLimit("simulation exceeded " + std::to_string(max_configs) + " configurations");
        }
        if (next.empty()) {
            return false;
        }
        frontier = std::move(next);
    }
}

std::vector<WangTile> tm_wang_tiles(const TuringMachine& m) {
    validate_machine(m);
    std::vector<WangTile> out;
    const auto& S = m.symbols;
    const auto& Q = m.states;

    // Borders. Interior edges facing the side borders carry no signal, so a
    // head moving off the tape has nowhere to go.
    out.push_back({"border:BL", "oL", "l", "seam", "bb"});
    out.push_back({"border:B", "bb", "b", "seam", "bb"});
    out.push_back({"border:BR", "bb", "r", "seam", "oR"});
    out.push_back({"border:Linit", "oL", "l", "l", "i0"});
    out.push_back({"border:L", "oL", "l", "l", none});
    out.push_back({"border:Rinit", "i1", "r", "r", "oR"});
    out.push_back({"border:R", none, "r", "r", "oR"});
    out.push_back({"border:TL", "oL", "seam", "l", "tt"});
    out.push_back({"border:TR", "tt", "seam", "r", "oR"});
    for (const auto& a : S) {
        out.push_back({"border:top:" + a, "tt", "seam", sym_color(a), "tt"});
    }
    for (const int h : m.halting) {
        for (const auto& a : S) {
            const auto& q = Q[static_cast<std::size_t>(h)];
            out.push_back({"border:top:(" + q + "," + a + ")", "tt", "seam", head_color(q, a), "tt"});
        }
    }

    for (const auto& a : S) {
        out.push_back({"copy:" + a, none, sym_color(a), sym_color(a), none});
    }

    std::set<std::pair<int, Move>> arrivals;
    for (const auto& t : m.transitions) {
        const auto& q = Q[static_cast<std::size_t>(t.from)];
        const auto& a = S[static_cast<std::size_t>(t.read)];
        const auto& q2 = Q[static_cast<std::size_t>(t.to)];
        const auto& b = S[static_cast<std::size_t>(t.write)];
        const bool right = t.move == Move::Right;
        out.push_back({"head:act:" + q + "," + a + ">" + q2 + "," + b + "," + (right ? "R" : "L"),
                       right ? none : left_signal(q2), sym_color(b), head_color(q, a),
                       right ? right_signal(q2) : none});
        arrivals.insert({t.to, t.move});
    }
    for (const auto& [q, mv] : arrivals) {
        const auto& qn = Q[static_cast<std::size_t>(q)];
        const bool right = mv == Move::Right;
        for (const auto& c : S) {
            out.push_back({"head:recv:" + qn + "," + (right ? "R" : "L") + "," + c,
                           right ? right_signal(qn) : none, head_color(qn, c), sym_color(c),
                           right ? none : left_signal(qn)});
        }
    }

    const auto& s0 = Q[static_cast<std::size_t>(m.initial)];
    for (const auto& a : S) {
        out.push_back({"init:head:" + a, "i0", head_color(s0, a), "b", "i1"});
    }
    for (const auto& a : S) {
        out.push_back({"init:sym:" + a, "i1", sym_color(a), "b", "i1"});
    }

    for (const int h : m.halting) {
        for (const auto& a : S) {
            const auto& q = Q[static_cast<std::size_t>(h)];
            out.push_back({"halt:(" + q + "," + a + ")", none, head_color(q, a), head_color(q, a), none});
        }
    }
    return out;
}

TilingSystem encode_tm(const TuringMachine& m) {
    auto sys = wang_system(tm_wang_tiles(m));
    std::string inputs;
    for (const int a : m.input) {
        inputs += (inputs.empty() ? "" : ",") + m.symbols[static_cast<std::size_t>(a)];
    }
    sys.metadata["families"] = "border,copy,head,init,halt";
    sys.metadata["blank"] = m.symbols[static_cast<std::size_t>(m.blank)];
    sys.metadata["input_alphabet"] = inputs;
    return sys;
}

bool rectangle_tileable(const TilingSystem& sys, const Word& input, int space, int time, SearchOptions options) {
    return rectangle_witness(sys, input, space, time, options).has_value();
}

std::optional<RegionAssignment> rectangle_witness(const TilingSystem& sys, const Word& input, int space, int time,
                                                  SearchOptions options) {
    if (space < 1 || time < 1) {
        throw InvalidDimensions("rectangle interior must be at least 1x1");
    }
    const auto blank_it = sys.metadata.find("blank");
    if (blank_it == sys.metadata.end()) {
        throw AlphabetMismatch("system was not produced by encode_tm");
    }
    std::set<std::string> inputs;
    if (const auto it = sys.metadata.find("input_alphabet"); it != sys.metadata.end()) {
        std::string cur;
        for (const char c : it->second + ",") {
            if (c == ',') {
                if (!cur.empty()) {
                    inputs.insert(cur);
                }
                cur.clear();
            } else {
                cur += c;
            }
        }
    }
    for (const auto& a : input) {
        if (!inputs.contains(a)) {
            throw AlphabetMismatch("'" + a + "' is not an input symbol");
        }
    }
    if (input.size() > static_cast<std::size_t>(space)) {
        return std::nullopt;
    }

    const int w = space + 2;
    const int h = time + 2;
    const CompiledSystem compiled(sys);
    RegionSearch search(compiled, w, h, false, false, options);
    search.fix_cell(0, 0, sys.at("border:BL"));
    search.fix_cell(w - 1, 0, sys.at("border:BR"));
    search.fix_cell(0, h - 1, sys.at("border:TL"));
    search.fix_cell(w - 1, h - 1, sys.at("border:TR"));
    for (int x = 1; x + 1 < w; ++x) {
        search.fix_cell(x, 0, sys.at("border:B"));
        const auto i = static_cast<std::size_t>(x - 1);
        const auto& a = i < input.size() ? input[i] : blank_it->second;
        search.fix_cell(x, 1, sys.at((x == 1 ? "init:head:" : "init:sym:") + a));
    }
    search.fix_cell(0, 1, sys.at("border:Linit"));
    search.fix_cell(w - 1, 1, sys.at("border:Rinit"));
    for (int y = 2; y + 1 < h; ++y) {
        search.fix_cell(0, y, sys.at("border:L"));
        search.fix_cell(w - 1, y, sys.at("border:R"));
    }
    TileMask top(sys.size());
    for (const auto& t : sys.tiles) {
        if (t.label.starts_with("border:top:")) {
            top.set(t.id);
        }
    }
    for (int x = 1; x + 1 < w; ++x) {
        search.restrict_cell(x, h - 1, top);
    }
    return search.first();
}

namespace machines {

namespace {

TuringMachine over_bits(std::vector<std::string> states, std::vector<int> halting) {
    TuringMachine m;
    m.states = std::move(states);
    m.halting = std::move(halting);
    m.symbols = {"_", "0", "1"};
    m.blank = 0;
    m.input = {1, 2};
    return m;
}

} // namespace

TuringMachine parity() {
    auto m = over_bits({"s0", "s1", "h"}, {2});
    m.symbols = {"_", "1"};
    m.input = {1};
    m.transitions = {{0, 1, 1, 1, Move::Right}, {1, 1, 0, 1, Move::Right}, {0, 0, 2, 0, Move::Left}};
    return m;
}

TuringMachine copier() {
    auto m = over_bits({"s0", "c0", "c1", "h"}, {3});
    m.transitions = {{0, 0, 3, 0, Move::Right}};
    for (int a = 1; a <= 2; ++a) {
        const int c = a;
        m.transitions.push_back({0, a, c, a, Move::Right});
        for (int b = 1; b <= 2; ++b) {
            m.transitions.push_back({c, b, c, b, Move::Right});
        }
        m.transitions.push_back({c, 0, 3, a, Move::Left});
    }
    return m;
}

TuringMachine guesser() {
    auto m = over_bits({"s0", "h"}, {1});
    m.transitions = {{0, 1, 0, 1, Move::Right}, {0, 2, 0, 2, Move::Right}, {0, 2, 1, 2, Move::Right}};
    return m;
}

TuringMachine stuck() {
    TuringMachine m;
    m.states = {"s0"};
    m.symbols = {"_"};
    return m;
}

TuringMachine instant() {
    auto m = over_bits({"s0"}, {0});
    return m;
}

} // namespace machines

} // namespace tileperiod
