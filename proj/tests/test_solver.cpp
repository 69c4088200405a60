#include "doctest.h"

#include <random>

#include "support.hpp"
#include "tileperiod/solver.hpp"

using namespace tileperiod;

namespace {

TransferGraph graph_of(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    TransferGraph g;
    g.width = 1;
    for (std::size_t i = 0; i < n; ++i) {
        g.nodes.push_back(Band{1, {{static_cast<TileId>(i)}}});
    }
    g.succ.resize(n);
    for (const auto& [u, v] : edges) {
        g.succ[u].push_back(v);
    }
    return g;
}

std::set<int> h_eigen(const TilingSystem& s, int pmax) { return periods_of(horizontal_eigenperiods(s, pmax)); }
std::set<int> t_eigen(const TilingSystem& s, int pmax) { return periods_of(total_eigenperiods(s, pmax)); }

} // namespace

TEST_CASE("maximal proper divisors") {
    CHECK(maximal_proper_divisors(1).empty());
    CHECK(maximal_proper_divisors(2) == std::vector<int>{1});
    CHECK(maximal_proper_divisors(12) == std::vector<int>{4, 6});
    CHECK(maximal_proper_divisors(30) == std::vector<int>{6, 10, 15});
}

TEST_CASE("build_transfer_graph examples") {
    const auto g2 = build_transfer_graph(fixtures::single_free(), 1);
    CHECK(g2.nodes.size() == 1);
    CHECK(g2.edge_count() == 1);
    CHECK(g2.succ[0] == std::vector<std::uint32_t>{0});

    CHECK(build_transfer_graph(fixtures::single_forbidden(), 1).nodes.empty());

    const auto g1 = build_transfer_graph(fixtures::stripes(), 2);
    REQUIRE(g1.nodes.size() == 2);
    CHECK(g1.nodes[0].rows[0] == std::vector<TileId>{0, 1});
    CHECK(g1.nodes[1].rows[0] == std::vector<TileId>{1, 0});
    CHECK(g1.succ[0] == std::vector<std::uint32_t>{0});
    CHECK(g1.succ[1] == std::vector<std::uint32_t>{1});

    SolverOptions tight;
    tight.node_cap = 1;
    CHECK_THROWS_AS(build_transfer_graph(fixtures::free_pair(), 2, tight), ResourceLimit);
}

TEST_CASE("transfer graph uses taller bands for taller patterns") {
    auto sys = fixtures::free_pair();
    // Forbid a column a, ?, a: the middle tile is free.
    sys.forbidden.push_back(Pattern({{0, 0, 0, -1}, {0, 2, 0, -1}}));
    const auto g = build_transfer_graph(sys, 1);
    CHECK(g.band_height == 2);
    CHECK(g.nodes.size() == 4);
    // From (a,a) the next row must be b: (a,b) only.
    const auto& aa = g.nodes[0];
    REQUIRE(aa.rows == std::vector<std::vector<TileId>>{{0}, {0}});
    REQUIRE(g.succ[0].size() == 1);
    CHECK(g.nodes[g.succ[0][0]].rows == std::vector<std::vector<TileId>>{{0}, {1}});
}

TEST_CASE("horizontal_period_exists examples") {
    CHECK(horizontal_period_exists(fixtures::stripes(), 2));
    CHECK_FALSE(horizontal_period_exists(fixtures::stripes(), 3));
    for (int p = 1; p <= 4; ++p) {
        CHECK_FALSE(horizontal_period_exists(fixtures::single_forbidden(), p));
    }
    const auto rep = horizontal_period_exists(fixtures::stripes(), 4);
    REQUIRE(rep);
    REQUIRE(rep->walk);
    CHECK(check_region(fixtures::stripes(), rep->walk->unroll(3)).empty());
    CHECK_FALSE(rep->eigen);
}

TEST_CASE("live_subgraph examples") {
    const auto loop = graph_of(1, {{0, 0}});
    const auto l1 = live_subgraph(loop);
    CHECK(l1.nodes == loop.nodes);
    CHECK(l1.succ == loop.succ);

    CHECK(live_subgraph(graph_of(3, {{0, 1}, {1, 2}})).nodes.empty());

    const auto pendant = live_subgraph(graph_of(3, {{0, 1}, {1, 0}, {1, 2}}));
    REQUIRE(pendant.nodes.size() == 2);
    CHECK(pendant.nodes[0].rows[0][0] == 0);
    CHECK(pendant.nodes[1].rows[0][0] == 1);
    CHECK(pendant.succ[0] == std::vector<std::uint32_t>{1});
    CHECK(pendant.succ[1] == std::vector<std::uint32_t>{0});

    // Node 1 lies between two cycles without being on one.
    const auto bridge = live_subgraph(graph_of(4, {{0, 0}, {0, 1}, {1, 2}, {2, 2}, {3, 0}}));
    CHECK(bridge.nodes.size() == 3);
}

TEST_CASE("live_subgraph is a fixpoint") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 8;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        std::uniform_int_distribution<std::uint32_t> node(0, static_cast<std::uint32_t>(n - 1));
        for (std::size_t e = 0; e < n + trial % 5; ++e) {
            edges.push_back({node(rng), node(rng)});
        }
        const auto once = live_subgraph(graph_of(n, edges));
        const auto twice = live_subgraph(once);
        CHECK(once.nodes == twice.nodes);
        CHECK(once.succ == twice.succ);
    }
}

TEST_CASE("horizontal_eigenperiods examples") {
    CHECK(h_eigen(fixtures::stripes(), 4) == std::set<int>{2});
    CHECK(h_eigen(fixtures::single_free(), 3) == std::set<int>{1});
    CHECK(h_eigen(fixtures::no_double_a(), 3) == std::set<int>{1, 2, 3});
    CHECK(h_eigen(fixtures::single_forbidden(), 4).empty());

    SolverOptions pool;
    pool.jobs = 4;
    CHECK(periods_of(horizontal_eigenperiods(fixtures::no_double_a(), 6, pool)) ==
          h_eigen(fixtures::no_double_a(), 6));
}

TEST_CASE("eigen requires a walk, not a single cycle") {
    // Tiles {a, b, c}. Columns read a...a c b...b upward (c at most once per
    // column); rows must alternate a and b, so every row that avoids c is
    // 2-periodic. Width 4 is an eigenperiod only through a c-row.
    TilingSystem s;
    const auto a = s.add_tile("a");
    const auto b = s.add_tile("b");
    const auto c = s.add_tile("c");
    s.forbidden = {Pattern::horizontal(a, a), Pattern::horizontal(b, b), Pattern::vertical(a, b),
                   Pattern::vertical(b, a),   Pattern::vertical(b, c),   Pattern::vertical(c, a),
                   Pattern::vertical(c, c)};
    const auto solver = h_eigen(s, 4);
    CHECK(solver == brute_force_oracle(s, 4, 8));
}

TEST_CASE("eigen witnesses pass the divisor filter") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const auto sys = testing::random_pair_system(rng, 3);
        for (const auto& rep : horizontal_eigenperiods(sys, 6)) {
            REQUIRE(rep.walk);
            const auto region = rep.walk->unroll(2);
            CHECK(region.width == rep.period);
            CHECK(check_region(sys, region).empty());
            CHECK(rows_are_eigen(region));
        }
        for (const auto& rep : total_eigenperiods(sys, 4)) {
            REQUIRE(rep.torus);
            CHECK(check_region(sys, *rep.torus).empty());
            CHECK(torus_is_eigen(*rep.torus));
            for (int q = 1; q < rep.period; ++q) {
                if (rep.period % q == 0) {
                    CHECK_FALSE((rep.torus->invariant_under(q, 0) && rep.torus->invariant_under(0, q)));
                }
            }
        }
    }
}

TEST_CASE("total_period_exists examples") {
    CHECK(total_period_exists(fixtures::single_free(), 1));
    CHECK_FALSE(total_period_exists(fixtures::stripes(), 1));
    const auto rep = total_period_exists(fixtures::stripes(), 2);
    REQUIRE(rep);
    REQUIRE(rep->torus);
    CHECK(rep->torus->at(0, 0) == 0);
    CHECK(rep->torus->at(1, 0) == 1);
    CHECK(rep->torus->at(0, 1) == 0);
    CHECK(rep->torus->at(1, 1) == 1);
}

TEST_CASE("total_eigenperiods examples") {
    CHECK(t_eigen(fixtures::stripes(), 4) == std::set<int>{2});
    CHECK(t_eigen(fixtures::single_free(), 4) == std::set<int>{1});
    CHECK(t_eigen(fixtures::single_forbidden(), 4).empty());
}

TEST_CASE("total periods are closed under multiples") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 80; ++trial) {
        const auto sys = testing::random_pair_system(rng, 3);
        for (int p = 1; p <= 2; ++p) {
            if (!total_period_exists(sys, p)) {
                continue;
            }
            CHECK(total_period_exists(sys, 2 * p));
            CHECK(total_period_exists(sys, 3 * p));
        }
    }
}

TEST_CASE("brute_force_oracle examples") {
    CHECK(brute_force_oracle(fixtures::stripes(), 2, 4) == std::set<int>{2});
    CHECK(brute_force_oracle(fixtures::single_forbidden(), 3, 4).empty());
    CHECK(brute_force_oracle(fixtures::no_double_a(), 3, 4) == std::set<int>{1, 2, 3});
    CHECK(brute_force_oracle(fixtures::stripes(), 4, std::nullopt) == std::set<int>{2});
    CHECK(brute_force_oracle(fixtures::single_forbidden(), 3, std::nullopt).empty());
    CHECK(brute_force_oracle(fixtures::no_double_a(), 3, std::nullopt) == std::set<int>{1, 2, 3});
}

TEST_CASE("eigen rows may be transient") {
    // Constant a rows sit below constant b rows, with a single row mixing c
    // into the switch. Mixed rows never recur.
    TilingSystem s;
    const auto a = s.add_tile("a");
    const auto b = s.add_tile("b");
    const auto c = s.add_tile("c");
    s.forbidden = {Pattern::horizontal(a, b), Pattern::horizontal(b, a), Pattern::horizontal(c, c),
                   Pattern::vertical(b, a),   Pattern::vertical(b, c),   Pattern::vertical(c, a),
                   Pattern::vertical(c, c)};
    CHECK(h_eigen(s, 2) == std::set<int>{1, 2});
    CHECK(brute_force_oracle(s, 2, std::nullopt) == std::set<int>{1, 2});
    CHECK(t_eigen(s, 2) == std::set<int>{1});
}

TEST_CASE("oracle agrees with the transfer-graph solver") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const auto sys = testing::random_pair_system(rng, 3);
        CHECK(h_eigen(sys, 4) == brute_force_oracle(sys, 4, 6));
        CHECK(h_eigen(sys, 5) == brute_force_oracle(sys, 5, std::nullopt));
    }
}

TEST_CASE("disjoint_union period sets") {
    const auto fix1 = fixtures::stripes();
    const auto fix2 = fixtures::single_free();
    const auto fix3 = fixtures::single_forbidden();
    CHECK(t_eigen(disjoint_union(fix2, fix3), 3) == std::set<int>{1});
    CHECK(t_eigen(disjoint_union(fix1, fix2), 4) == std::set<int>{1, 2});
    CHECK(t_eigen(disjoint_union(fix2, fix2), 4) == std::set<int>{1});
}

TEST_CASE("disjoint_union admits a torus iff a side does") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const auto s1 = testing::random_pair_system(rng, 2, 0.5);
        const auto s2 = testing::random_pair_system(rng, 2, 0.5);
        const auto u = disjoint_union(s1, s2);
        for (int p = 1; p <= 4; ++p) {
            const bool either = total_period_exists(s1, p).has_value() || total_period_exists(s2, p).has_value();
            CHECK(total_period_exists(u, p).has_value() == either);
        }
    }
}

TEST_CASE("union law on total eigenperiods") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s1 = testing::random_pair_system(rng, 3);
        const auto s2 = testing::random_pair_system(rng, 3);
        auto expected = t_eigen(s1, 4);
        const auto other = t_eigen(s2, 4);
        expected.insert(other.begin(), other.end());
        CHECK(t_eigen(disjoint_union(s1, s2), 4) == expected);
    }
}

TEST_CASE("layer_product period sets") {
    const auto fix1 = fixtures::stripes();
    const TilingSystem with_free[] = {fix1, fixtures::single_free()};
    const auto p1 = layer_product(with_free);
    CHECK(h_eigen(p1, 4) == h_eigen(fix1, 4));
    CHECK(t_eigen(p1, 4) == t_eigen(fix1, 4));

    const TilingSystem twice[] = {fix1, fix1};
    const std::vector<CouplingPattern> equal = {{{0, 0, {TileId{0}, TileId{1}}}}, {{0, 0, {TileId{1}, TileId{0}}}}};
    const auto p2 = layer_product(twice, equal);
    CHECK(h_eigen(p2, 4) == h_eigen(fix1, 4));
    CHECK(t_eigen(p2, 4) == t_eigen(fix1, 4));
}
