#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "support.hpp"
#include "tileperiod/io.hpp"
#include "tileperiod/solver.hpp"

using namespace tileperiod;

namespace {

std::set<Pattern> pattern_set(const TilingSystem& s) { return {s.forbidden.begin(), s.forbidden.end()}; }

int error_line(std::string_view text) {
    try {
        io::parse_system(text);
    } catch (const FormatError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST_CASE("system round trip") {
    std::vector<TilingSystem> systems{fixtures::stripes(), fixtures::single_free(), fixtures::single_forbidden(),
                                      fixtures::no_double_a(), encode_tm(machines::parity())};
    const TilingSystem parts[] = {fixtures::stripes(), fixtures::no_double_a()};
    const std::vector<CouplingPattern> coupling = {{{0, 0, {TileId{0}, TileId{0}}}},
                                                   {{0, 0, {TileId{1}, std::nullopt}}, {1, 1, {std::nullopt, TileId{1}}}}};
    systems.push_back(layer_product(parts, coupling));
    systems.push_back(disjoint_union(fixtures::stripes(), fixtures::no_double_a()));
    std::mt19937 rng(41);
    for (int i = 0; i < 30; ++i) {
        systems.push_back(testing::random_pair_system(rng, 4));
    }
    for (const auto& s : systems) {
        const auto text = io::dump_system(s);
        const auto back = io::parse_system(text);
        CHECK(back == s);
        CHECK(io::dump_system(back) == text);
    }
}

TEST_CASE("allowed_pairs expands to the forbidden complement") {
    const auto pairs = io::parse_system(io::read_file(testing::data_file("fix1-pairs.json")));
    const auto plain = io::parse_system(io::read_file(testing::data_file("fix1.json")));
    CHECK(pattern_set(pairs) == pattern_set(fixtures::stripes()));
    CHECK(pattern_set(plain) == pattern_set(fixtures::stripes()));

    const auto half = io::parse_system(R"({"tiles": ["a", "b"], "allowed_pairs": {"vertical": [["a", "a"]]}})");
    CHECK(half.forbidden.size() == 3);
    CHECK(periods_of(total_eigenperiods(half, 2)) == std::set<int>{1});

    CHECK_THROWS_AS(io::parse_system(R"({"tiles": ["a"], "forbidden": [], "allowed_pairs": {}})"), FormatError);
    CHECK_THROWS_AS(io::parse_system(R"({"tiles": ["a"], "allowed_pairs": {"diagonal": []}})"), FormatError);
}

TEST_CASE("malformed systems") {
    CHECK(error_line("{\n \"tiles\": [\"a\",\n}\n") == 3);
    CHECK(error_line("{\"tiles\": [\"a\"], \"forbidden\": [{\"0,0\": \"q\"}]}") == 0);
    CHECK_THROWS_WITH_AS(io::parse_system(R"({"tiles": ["a"], "forbidden": [{"0,0": "q"}]})"),
                         doctest::Contains("unknown tile \"q\""), FormatError);
    CHECK_THROWS_AS(io::parse_system(R"({"tiles": []})"), FormatError);
    CHECK_THROWS_AS(io::parse_system(R"({"tiles": ["a", "a"]})"), FormatError);
    CHECK_THROWS_AS(io::parse_system(R"({"tiles": ["a"], "forbidden": [{"x": "a"}]})"), FormatError);
    CHECK_THROWS_AS(io::parse_system(R"({"tiles": ["a"], "forbidden": [{"0,0x": "a"}]})"), FormatError);
    CHECK_THROWS_AS(io::parse_system(R"({"tiles": ["a"], "forbidden": [{}]})"), FormatError);
    CHECK_THROWS_AS(io::parse_system(R"([1, 2])"), FormatError);
    CHECK_THROWS_AS(io::parse_system(R"({"tiles": ["a"], "metadata": {"k": 3}})"), FormatError);
}

TEST_CASE("machine round trip") {
    for (const auto& m : {machines::parity(), machines::copier(), machines::guesser(), machines::stuck(),
                          machines::instant()}) {
        const auto text = io::dump_machine(m);
        const auto back = io::parse_machine(text);
        CHECK(back.states == m.states);
        CHECK(back.symbols == m.symbols);
        CHECK(back.halting == m.halting);
        CHECK(back.input == m.input);
        CHECK(back.transitions == m.transitions);
        CHECK(io::dump_machine(back) == text);
    }
    const auto parity = io::parse_machine(io::read_file(testing::data_file("parity.json")));
    CHECK(parity.transitions == machines::parity().transitions);
}

TEST_CASE("machine files") {
    CHECK_THROWS_AS(io::parse_machine(R"({"states": [], "initial": "s", "halting": [], "blank": "_",
                                          "transitions": []})"),
                    FormatError);
    CHECK_THROWS_AS(io::parse_machine(R"({"states": ["s"], "initial": "t", "halting": [], "blank": "_",
                                          "transitions": []})"),
                    FormatError);
    CHECK_THROWS_AS(io::parse_machine(R"({"states": ["s", "h"], "initial": "s", "halting": ["h"], "blank": "_",
                                          "transitions": [["h", "_", "s", "_", "R"]]})"),
                    FormatError);
    CHECK_THROWS_AS(io::parse_machine(R"({"states": ["s"], "initial": "s", "halting": [], "blank": "_",
                                          "transitions": [["s", "_", "s", "_", "U"]]})"),
                    FormatError);

    // Symbols and input alphabet default from the transitions.
    const auto m = io::parse_machine(R"({"states": ["s", "h"], "initial": "s", "halting": ["h"], "blank": "_",
                                         "transitions": [["s", "1", "h", "0", "S"]]})");
    CHECK(m.symbols == std::vector<std::string>{"_", "1", "0"});
    CHECK(m.input == std::vector<int>{1, 2});
    REQUIRE(m.states.size() == 3);
    CHECK(m.states[2] == "h~stay");
    CHECK(m.transitions.size() == 4);
    CHECK(accepts_within(m, word("1"), {3, 2}));
    CHECK_FALSE(accepts_within(m, word("1"), {2, 2}));
    CHECK_FALSE(accepts_within(m, word("1"), {3, 1}));
}

TEST_CASE("witness round trip") {
    const auto sys = fixtures::stripes();
    const auto rep = total_period_exists(sys, 2);
    REQUIRE(rep);
    const auto w = io::make_witness(sys, "total", 2, *rep->torus);
    const auto text = io::dump_witness(w);
    const auto back = io::parse_witness(text);
    CHECK(back.region == w.region);
    CHECK(back.labels == w.labels);
    CHECK(back.period == 2);
    CHECK(io::dump_witness(back) == text);
    CHECK_THROWS_AS(io::parse_witness(R"({"mode": "total", "period": 1, "width": 1, "height": 1,
                                          "wrap_x": true, "wrap_y": true, "tiles": {}, "rows": [[0]]})"),
                    FormatError);
}

TEST_CASE("construction specs") {
    const auto spec = io::parse_construction_spec(io::read_file(testing::data_file("horizontal-mock.json")));
    CHECK(spec.mode == ConstructionMode::Horizontal);
    CHECK(spec.aperiodic.certified);
    CHECK(spec.aperiodic.direction == Direction::East);
    CHECK(spec.base == 2);
    const auto unc = io::parse_construction_spec(io::read_file(testing::data_file("uncertified.json")));
    CHECK_FALSE(unc.aperiodic.certified);
    CHECK_THROWS_AS(io::parse_construction_spec(R"({"machine": {}, "aperiodic": "mock-nw", "base": 2,
                                                    "mode": "total"})"),
                    FormatError);
}
