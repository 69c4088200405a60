#include "doctest.h"

#include "support.hpp"
#include "tileperiod/core.hpp"

using namespace tileperiod;

namespace {

bool has_code(const std::vector<Diagnostic>& diags, const std::string& code) {
    for (const auto& d : diags) {
        if (d.code == code) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("validate_system") {
    CHECK(validate_system(fixtures::single_free()).empty());
    CHECK(validate_system(fixtures::stripes()).empty());

    auto bad_ref = fixtures::single_free();
    bad_ref.forbidden.push_back(Pattern::single(7));
    const auto d1 = validate_system(bad_ref);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].code == "unknown_tile");

    auto empty_pat = fixtures::single_free();
    empty_pat.forbidden.emplace_back();
    const auto d2 = validate_system(empty_pat);
    REQUIRE(d2.size() == 1);
    CHECK(d2[0].code == "empty_pattern");

    TilingSystem none;
    CHECK(has_code(validate_system(none), "empty_alphabet"));

    auto dup = fixtures::free_pair();
    dup.tiles[1].label = "a";
    CHECK(has_code(validate_system(dup), "duplicate_label"));

    auto conflict = fixtures::free_pair();
    conflict.forbidden.push_back(Pattern({{0, 0, 0, -1}, {0, 0, 1, -1}}));
    CHECK(has_code(validate_system(conflict), "duplicate_offset"));
}

TEST_CASE("pattern normalization") {
    const Pattern p({{3, 5, 1, -1}, {2, 7, 0, -1}});
    CHECK(p.cells()[0].dx == 1);
    CHECK(p.cells()[0].dy == 0);
    CHECK(p.cells()[1].dx == 0);
    CHECK(p.cells()[1].dy == 2);
    CHECK(p.width() == 2);
    CHECK(p.height() == 3);
    CHECK(Pattern({{1, 1, 0, -1}}) == Pattern::single(0));
}

TEST_CASE("reduce_pattern_mod") {
    const Pattern aa({{0, 0, 0, -1}, {2, 0, 0, -1}});
    const auto r1 = reduce_pattern_mod(aa, 2, std::nullopt);
    REQUIRE(r1);
    CHECK(*r1 == Pattern::single(0));

    const Pattern ab({{0, 0, 0, -1}, {2, 0, 1, -1}});
    CHECK_FALSE(reduce_pattern_mod(ab, 2, std::nullopt));

    const auto h = Pattern::horizontal(0, 1);
    const auto r3 = reduce_pattern_mod(h, 3, std::nullopt);
    REQUIRE(r3);
    CHECK(*r3 == h);

    SUBCASE("idempotent") {
        std::mt19937 rng(11);
        std::uniform_int_distribution<int> off(0, 6);
        std::uniform_int_distribution<int> tile(0, 2);
        std::uniform_int_distribution<int> per(1, 4);
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<PatternCell> cells;
            const int n = 1 + trial % 4;
            for (int i = 0; i < n; ++i) {
                cells.push_back({off(rng), off(rng), static_cast<TileId>(tile(rng)), -1});
            }
            const Pattern pat(cells);
            const std::optional<int> px = trial % 3 == 0 ? std::nullopt : std::optional(per(rng));
            const std::optional<int> py = trial % 5 == 0 ? std::nullopt : std::optional(per(rng));
            const auto once = reduce_pattern_mod(pat, px, py);
            if (once) {
                const auto twice = reduce_pattern_mod(*once, px, py);
                REQUIRE(twice);
                CHECK(*twice == *once);
            }
        }
    }
}

TEST_CASE("check_region examples") {
    const auto fix2 = fixtures::single_free();
    CHECK(check_region(fix2, RegionAssignment(3, 3, false, false)).empty());

    const auto fix3 = fixtures::single_forbidden();
    const auto v = check_region(fix3, RegionAssignment::torus(1));
    REQUIRE(v.size() == 1);
    CHECK(v[0] == Violation{0, 0, 0});

    const auto fix1 = fixtures::stripes();
    auto torus = RegionAssignment::torus(2);
    torus.at(0, 0) = 0;
    torus.at(0, 1) = 0;
    torus.at(1, 0) = 1;
    torus.at(1, 1) = 1;
    CHECK(check_region(fix1, torus).empty());

    // Rows instead of columns violate every horizontal anchor.
    auto rows = RegionAssignment::torus(2);
    rows.at(0, 1) = 1;
    rows.at(1, 1) = 1;
    CHECK(check_region(fix1, rows).size() == 8);

    CHECK_THROWS_AS(check_region(fix2, RegionAssignment(1, 1, false, false, 4)), UnknownTile);
}

TEST_CASE("check_region boundary semantics") {
    const auto fix1 = fixtures::stripes();
    // A single a-a pair straddles the seam only when x wraps.
    RegionAssignment r(2, 1, false, false);
    r.at(0, 0) = 0;
    r.at(1, 0) = 1;
    CHECK(check_region(fix1, r).empty());
    RegionAssignment one(1, 1, false, false);
    CHECK(check_region(fix1, one).empty());
    RegionAssignment one_wrapped(1, 1, true, false);
    CHECK(check_region(fix1, one_wrapped).size() == 1);
}

TEST_CASE("check_region properties on random systems") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        auto sys = testing::random_pair_system(rng, 3);
        const int p = 1 + trial % 3;
        auto region = RegionAssignment::torus(p);
        std::uniform_int_distribution<TileId> tile(0, static_cast<TileId>(sys.size() - 1));
        for (auto& c : region.cells) {
            c = tile(rng);
        }
        if (!check_region(sys, region).empty()) {
            continue;
        }
        CHECK(check_region(sys, testing::repeat_region(region, 2, 2)).empty());
        auto bigger = sys;
        bigger.add_tile("extra");
        CHECK(check_region(bigger, region).empty());
    }
}

TEST_CASE("layer_product") {
    const TilingSystem fix2[] = {fixtures::single_free(), fixtures::single_free()};
    const auto trivial = layer_product(fix2);
    CHECK(trivial.size() == 1);
    CHECK(trivial.forbidden.empty());
    CHECK(validate_system(trivial).empty());

    const TilingSystem mixed[] = {fixtures::stripes(), fixtures::single_free()};
    const auto p = layer_product(mixed);
    CHECK(p.size() == 2);
    CHECK(p.forbidden.size() == 4);
    CHECK(p.tiles[1].layers == std::vector<TileId>{1, 0});
    CHECK(p.tiles[1].label == "b|t");

    const CouplingPattern wrong{{0, 0, {TileId{0}}}};
    CHECK_THROWS_AS(layer_product(mixed, std::span(&wrong, 1)), AlphabetMismatch);
    const CouplingPattern unknown{{0, 0, {TileId{5}, std::nullopt}}};
    CHECK_THROWS_AS(layer_product(mixed, std::span(&unknown, 1)), AlphabetMismatch);

    ProductOptions tiny;
    tiny.max_tiles = 3;
    const TilingSystem four[] = {fixtures::stripes(), fixtures::stripes()};
    CHECK_THROWS_AS(layer_product(four, {}, {}, tiny), ResourceLimit);
}

TEST_CASE("layered patterns match by component") {
    const TilingSystem parts[] = {fixtures::stripes(), fixtures::free_pair()};
    const auto p = layer_product(parts);
    // (a,a) next to (a,b) horizontally lifts the stripes pair aa.
    RegionAssignment r(2, 1, false, false);
    r.at(0, 0) = 0; // a|a
    r.at(1, 0) = 1; // a|b
    CHECK(check_region(p, r).size() == 1);
    const auto flat = flatten_layers(p);
    CHECK(flat.layers.empty());
    CHECK(flat.forbidden.size() == 4 * 4);
    CHECK(check_region(flat, r).size() == 1);
}

TEST_CASE("disjoint_union structure") {
    const auto u = disjoint_union(fixtures::stripes(), fixtures::single_free());
    CHECK(u.size() == 3);
    CHECK(u.tiles[0].label == "1:a");
    CHECK(u.tiles[2].label == "2:t");
    // 4 original + 0 + 4 mixed patterns per cross pair.
    CHECK(u.forbidden.size() == 4 + 4 * 2);
    CHECK(validate_system(u).empty());
}
