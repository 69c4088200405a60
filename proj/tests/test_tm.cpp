#include "doctest.h"

#include <set>

#include "tileperiod/tm.hpp"

using namespace tileperiod;

namespace {

std::vector<Word> words_upto(const TuringMachine& m, std::size_t len) {
    std::vector<Word> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == len) {
            continue;
        }
        for (const int a : m.input) {
            auto w = out[i];
            w.push_back(m.symbols[static_cast<std::size_t>(a)]);
            out.push_back(std::move(w));
        }
    }
    return out;
}

std::size_t family_count(const TilingSystem& sys, std::string_view prefix) {
    std::size_t n = 0;
    for (const auto& t : sys.tiles) {
        n += t.label.starts_with(prefix) ? 1 : 0;
    }
    return n;
}

} // namespace

TEST_CASE("validate_machine") {
    for (const auto& m : {machines::parity(), machines::copier(), machines::guesser(), machines::stuck(),
                          machines::instant()}) {
        CHECK_NOTHROW(validate_machine(m));
    }
    auto m = machines::parity();
    m.transitions.push_back({2, 1, 0, 1, Move::Right});
    CHECK_THROWS_AS(validate_machine(m), InvalidMachine);
    m = machines::parity();
    m.transitions.push_back({0, 7, 0, 1, Move::Right});
    CHECK_THROWS_AS(validate_machine(m), InvalidMachine);
    m = machines::parity();
    m.states.clear();
    CHECK_THROWS_AS(validate_machine(m), InvalidMachine);
    m = machines::parity();
    m.symbols[1] = "a,b";
    CHECK_THROWS_AS(validate_machine(m), InvalidMachine);
}

TEST_CASE("accepts_within examples") {
    const auto parity = machines::parity();
    CHECK(accepts_within(parity, word("11"), {4, 4}));
    CHECK_FALSE(accepts_within(parity, word("1"), {4, 4}));
    CHECK_FALSE(accepts_within(parity, word("11"), {3, 4}));
    CHECK_FALSE(accepts_within(parity, word("11"), {4, 2}));
    // Halting steps left, which is impossible from cell 0.
    CHECK_FALSE(accepts_within(parity, word(""), {4, 4}));
    CHECK(accepts_within(parity, word("11"), {4, 3}));
    for (const auto& m : {parity, machines::copier(), machines::guesser(), machines::stuck()}) {
        CHECK_FALSE(accepts_within(m, {}, {1, 1}));
    }

    const auto copier = machines::copier();
    CHECK(accepts_within(copier, word("01"), {4, 3}));
    CHECK_FALSE(accepts_within(copier, word("01"), {3, 3}));
    CHECK_FALSE(accepts_within(copier, word("01"), {4, 2}));

    const auto guesser = machines::guesser();
    CHECK(accepts_within(guesser, word("001"), {4, 4}));
    CHECK(accepts_within(guesser, word("1"), {2, 2}));
    CHECK_FALSE(accepts_within(guesser, word("101"), {2, 2}));
    CHECK_FALSE(accepts_within(guesser, word("00"), {8, 8}));

    CHECK(accepts_within(machines::instant(), word("0"), {1, 1}));
    CHECK_FALSE(accepts_within(machines::instant(), word("00"), {1, 1}));

    CHECK_THROWS_AS(accepts_within(parity, word("0"), {4, 4}), AlphabetMismatch);
    CHECK_THROWS_AS(accepts_within(parity, word("1"), {0, 4}), InvalidDimensions);
    CHECK_THROWS_AS(accepts_within(guesser, word("1111"), {8, 8}, 2), ResourceLimit);
}

TEST_CASE("encode_tm families") {
    const auto sys = encode_tm(machines::stuck());
    CHECK(sys.is_pair_system());
    CHECK(validate_system(sys).empty());
    CHECK(sys.metadata.at("families") == "border,copy,head,init,halt");
    CHECK(family_count(sys, "border:") == 10);
    CHECK(family_count(sys, "copy:") == 1);
    CHECK(family_count(sys, "init:") == 2);
    CHECK(sys.size() == 13);

    const auto parity = encode_tm(machines::parity());
    CHECK(family_count(parity, "head:act:") == 3);
    // Right arrivals in s0 and s1, a left arrival in h, each over two symbols.
    CHECK(family_count(parity, "head:recv:") == 6);
    CHECK(family_count(parity, "halt:") == 2);
}

TEST_CASE("rectangle_tileable examples") {
    const auto parity = encode_tm(machines::parity());
    CHECK(rectangle_tileable(parity, word("11"), 4, 4));
    CHECK(rectangle_tileable(parity, word("11"), 4, 6));
    CHECK_FALSE(rectangle_tileable(parity, word("1"), 4, 6));
    CHECK_THROWS_AS(rectangle_tileable(parity, word("11"), 0, 4), InvalidDimensions);
    CHECK_THROWS_AS(rectangle_tileable(parity, word("11"), 4, 0), InvalidDimensions);

    const auto stuck = encode_tm(machines::stuck());
    for (int t = 1; t <= 5; ++t) {
        CHECK_FALSE(rectangle_tileable(stuck, {}, 2, t));
    }

    CHECK(rectangle_tileable(encode_tm(machines::instant()), {}, 1, 1));
}

TEST_CASE("rectangle witnesses are valid") {
    const auto sys = encode_tm(machines::copier());
    const auto r = rectangle_witness(sys, word("10"), 3, 5);
    REQUIRE(r);
    CHECK(check_region(sys, *r).empty());
    CHECK(r->width == 5);
    CHECK(r->height == 7);
    CHECK(sys.tiles[r->at(1, 1)].label == "init:head:1");
    CHECK(sys.tiles[r->at(3, 1)].label == "init:sym:_");
}

TEST_CASE("no dead tiles for a one-state machine") {
    const auto m = machines::instant();
    const auto sys = encode_tm(m);
    std::set<TileId> used;
    for (const auto& u : words_upto(m, 2)) {
        for (int s = 1; s <= 3; ++s) {
            for (int t = 1; t <= 3; ++t) {
                if (const auto r = rectangle_witness(sys, u, s, t)) {
                    used.insert(r->cells.begin(), r->cells.end());
                }
            }
        }
    }
    for (const auto& t : sys.tiles) {
        if (!t.label.starts_with("border:")) {
            CHECK_MESSAGE(used.contains(t.id), t.label);
        }
    }
}

TEST_CASE("tiling matches the simulator") {
    for (const auto& m : {machines::parity(), machines::copier(), machines::guesser(), machines::stuck(),
                          machines::instant()}) {
        const auto sys = encode_tm(m);
        for (const auto& u : words_upto(m, 3)) {
            for (int s = 1; s <= 4; ++s) {
                for (int t = 1; t <= 6; ++t) {
                    CHECK(rectangle_tileable(sys, u, s, t) == accepts_within(m, u, {t, s}));
                }
            }
        }
    }
}
