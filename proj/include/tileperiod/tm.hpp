#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tileperiod/core.hpp"
#include "tileperiod/search.hpp"
#include "tileperiod/wang.hpp"

namespace tileperiod {

enum class Move { Left, Right };

// Indices refer to TuringMachine::states and TuringMachine::symbols.
struct Transition {
    int from = 0;
    int read = 0;
    int to = 0;
    int write = 0;
    Move move = Move::Right;

    auto operator<=>(const Transition&) const = default;
};

// Nondeterministic machine with one semi-infinite tape.
struct TuringMachine {
    std::vector<std::string> states;
    int initial = 0;
    std::vector<int> halting;
    std::vector<std::string> symbols;
    int blank = 0;
    std::vector<int> input;
    std::vector<Transition> transitions;

    bool is_halting(int q) const;
    int state(std::string_view name) const;
    int symbol(std::string_view name) const;
};

// Throws InvalidMachine with the first broken invariant.
void validate_machine(const TuringMachine& m);

// time = rows of the run (configurations 0 .. time-1), space = tape cells.
struct RunBound {
    int time = 1;
    int space = 1;
};

using Word = std::vector<std::string>;

// One symbol per character.
Word word(std::string_view chars);

// Whether some run from the initial state, head on cell 0, reaches a halting
// state after at most b.time - 1 steps with the head inside the first b.space
// cells throughout. Inputs longer than b.space are rejected.
bool accepts_within(const TuringMachine& m, const Word& input, RunBound b,
                    std::uint64_t max_configs = 10'000'000);

// Edge-coloured tiles of the machine. Labels start with the tile family:
// border, copy, head, init or halt.
std::vector<WangTile> tm_wang_tiles(const TuringMachine& m);

TilingSystem encode_tm(const TuringMachine& m);

// Whether the bordered (space+2) x (time+2) rectangle with the input on the
// bottom interior row can be completed. `sys` must come from encode_tm.
bool rectangle_tileable(const TilingSystem& sys, const Word& input, int space, int time,
                        SearchOptions options = {});

// The first completed rectangle in search order, if any.
std::optional<RegionAssignment> rectangle_witness(const TilingSystem& sys, const Word& input, int space, int time,
                                                  SearchOptions options = {});

// Small machines over {_, 0, 1} used by the tests and the acceptance run.
namespace machines {
// Accepts 1^n for even n >= 2: toggles between two states scanning right and
// halts with a step back on the first blank.
TuringMachine parity();
// Deterministic; copies the first symbol onto the first blank, then halts
// after a step back.
TuringMachine copier();
// Nondeterministic; scans right and may stop on any 1, accepting inputs that
// contain a 1.
TuringMachine guesser();
// One state, only the blank symbol, no transitions.
TuringMachine stuck();
// Initial state is halting.
TuringMachine instant();
} // namespace machines

} // namespace tileperiod
