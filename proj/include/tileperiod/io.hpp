#pragma once

#include <string>
#include <string_view>

#include "tileperiod/construct.hpp"
#include "tileperiod/core.hpp"
#include "tileperiod/tm.hpp"

namespace tileperiod::io {

// Systems. Rules are either "forbidden" patterns keyed by "dx,dy" or
// "allowed_pairs" per axis; the latter is expanded to the forbidden complement
// on the axes it lists.
TilingSystem parse_system(std::string_view text);
std::string dump_system(const TilingSystem& sys);

// Machines. Moves are "L", "R" or "S"; stay moves become a right move into a
// fresh state followed by a left move.
TuringMachine parse_machine(std::string_view text);
std::string dump_machine(const TuringMachine& m);

struct Witness {
    std::string mode;
    int period = 0;
    RegionAssignment region;
    std::vector<std::string> labels; // indexed by tile id; only used ids are non-empty
};

Witness make_witness(const TilingSystem& sys, std::string mode, int period, const RegionAssignment& region);
Witness parse_witness(std::string_view text);
std::string dump_witness(const Witness& w);

// Construction specs name the machine inline and the tile set either by
// fixture name ("kari", "kari-east", "mock-east", "mock-nw") or inline.
ConstructionSpec parse_construction_spec(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

} // namespace tileperiod::io
