#include "dynmwm/oracle.hpp"
#include "dynmwm/weights.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace dynmwm;
using testutil::R;

namespace {

std::vector<EdgeKey> keys_of(const Matching& m) { return m.keys(); }

}  // namespace

TEST(OracleGeneral, GadgetIsAbPlusCd) {
    auto m = mwm_exact_general(testutil::gadget());
    EXPECT_EQ(m.weight(), R(5, 2));
    EXPECT_EQ(keys_of(m), (std::vector<EdgeKey>{make_key(0, 1), make_key(2, 3)}));
}

TEST(OracleGeneral, EmptyAndTriangle) {
    EXPECT_EQ(mwm_exact_general(DynamicGraph()).weight(), 0);
    DynamicGraph t;
    t.insert_edge(0, 1, 1);
    t.insert_edge(1, 2, 1);
    t.insert_edge(0, 2, 1);
    auto m = mwm_exact_general(t);
    EXPECT_EQ(m.weight(), 1);
    EXPECT_EQ(m.size(), 1u);
    EXPECT_EQ(keys_of(m).front(), make_key(0, 1));  // lexicographically smallest
}

TEST(OracleGeneral, BudgetExceeded) {
    DynamicGraph g;
    for (Vertex v = 0; v < 9; ++v) g.insert_edge(v, v + 1, 1);
    OracleBudget b;
    b.max_vertices_general = 6;
    EXPECT_THROW(mwm_exact_general(g, b), BudgetExceeded);
}

TEST(OracleBipartite, Examples) {
    DynamicGraph one;
    one.insert_edge(0, 1, 7);
    EXPECT_EQ(mwm_exact_bipartite(one, {0, 1}).weight(), 7);

    // Frozen: enumeration over the 7 matchings of K_{2,2} gives 10.
    DynamicGraph k22;
    k22.insert_edge(0, 2, 5);
    k22.insert_edge(0, 3, 1);
    k22.insert_edge(1, 2, 1);
    k22.insert_edge(1, 3, 5);
    EXPECT_EQ(testutil::brute_mwm(k22), 10);
    EXPECT_EQ(mwm_exact_bipartite(k22, testutil::halves(2)).weight(), 10);

    auto g = testutil::gadget();
    EXPECT_EQ(mwm_exact_bipartite(g, {0, 1, 0, 1}).weight(), R(5, 2));
}

TEST(OracleBipartite, RejectsImproperColouring) {
    DynamicGraph g;
    g.insert_edge(0, 1, 1);
    EXPECT_THROW(mwm_exact_bipartite(g, {0, 0}), std::invalid_argument);
    DynamicGraph t;
    t.insert_edge(0, 1, 1);
    t.insert_edge(1, 2, 1);
    t.insert_edge(0, 2, 1);
    EXPECT_FALSE(bipartition(t).has_value());
}

TEST(OracleBipartite, AgreesWithGeneralOnThousandInstances) {
    std::mt19937_64 rng(101);
    for (int it = 0; it < 1000; ++it) {
        std::size_t half = 1 + rng() % 5;
        auto g = testutil::random_bipartite(rng, half, 0.6, 30);
        auto side = testutil::halves(half);
        auto a = mwm_exact_general(g);
        auto b = mwm_exact_bipartite(g, side);
        auto c = mwm_exact_bipartite(g, side, OracleBudget{}, true);
        ASSERT_EQ(a.weight(), b.weight());
        ASSERT_EQ(a.weight(), c.weight());
        ASSERT_TRUE(is_subgraph_matching(b, g));
    }
}

TEST(OracleGeneral, AgreesWithBruteForce) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 400; ++it) {
        auto g = testutil::random_graph(rng, 2 + rng() % 7, 0.5, 20);
        auto m = mwm_exact_general(g);
        ASSERT_TRUE(is_subgraph_matching(m, g));
        ASSERT_EQ(m.weight(), testutil::brute_mwm(g));
        ASSERT_EQ(mwm_blossom(g).weight(), m.weight());
        ASSERT_EQ(mwm_best_exact(g).weight(), m.weight());
    }
}

TEST(OraclePathCycle, Examples) {
    // [1,2,1]: {e1,e3} and {e2} both weigh 2; tie goes to {e1,e3}.
    std::vector<WeightedEdge> p = {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}};
    auto m = mwm_path_cycle(p, false);
    EXPECT_EQ(m.weight(), 2);
    EXPECT_EQ(keys_of(m), (std::vector<EdgeKey>{make_key(0, 1), make_key(2, 3)}));

    std::vector<WeightedEdge> fig = {{0, 1, 1}, {1, 2, 1}, {2, 3, R(3, 2)}};
    m = mwm_path_cycle(fig, false);
    EXPECT_EQ(m.weight(), R(5, 2));
    EXPECT_EQ(keys_of(m), (std::vector<EdgeKey>{make_key(0, 1), make_key(2, 3)}));

    std::vector<WeightedEdge> tri = {{0, 1, 4}, {1, 2, 5}, {2, 0, 6}};
    m = mwm_path_cycle(tri, true);
    EXPECT_EQ(m.weight(), 6);
    EXPECT_TRUE(m.contains(make_key(0, 2)));
}

TEST(OraclePathCycle, RejectsNonWalk) {
    std::vector<WeightedEdge> broken = {{0, 1, 1}, {2, 3, 1}};
    EXPECT_THROW(mwm_path_cycle(broken, false), std::invalid_argument);
}

TEST(OraclePathCycle, ExhaustiveGridAgreesWithGeneral) {
    // Every path and cycle with up to 12 edges over a two-value grid, plus a
    // three-value grid for the shorter ones.
    for (std::size_t len = 1; len <= 12; ++len) {
        const std::vector<long> grid = len <= 7 ? std::vector<long>{1, 2, 3} : std::vector<long>{1, 2};
        std::size_t combos = 1;
        for (std::size_t i = 0; i < len; ++i) combos *= grid.size();
        for (std::size_t code = 0; code < combos; ++code) {
            std::vector<long> ws;
            std::size_t c = code;
            for (std::size_t i = 0; i < len; ++i) {
                ws.push_back(grid[c % grid.size()]);
                c /= grid.size();
            }
            for (bool cycle : {false, true}) {
                if (cycle && len < 3) continue;
                std::vector<WeightedEdge> walk;
                DynamicGraph g;
                for (std::size_t i = 0; i < len; ++i) {
                    Vertex a = static_cast<Vertex>(i), b = static_cast<Vertex>(cycle && i + 1 == len ? 0 : i + 1);
                    walk.emplace_back(a, b, Rational(ws[i]));
                    g.insert_edge(a, b, Rational(ws[i]));
                }
                auto dp = mwm_path_cycle(walk, cycle);
                auto ex = mwm_exact_general(g);
                ASSERT_EQ(dp.weight(), ex.weight());
                ASSERT_EQ(dp, ex) << "tie-break differs";
            }
        }
    }
}

TEST(OracleApprox, ContractHolds) {
    EXPECT_GE(approx_mwm_static(testutil::gadget(), R(1, 10)).weight(), R(9, 4));
    DynamicGraph star;
    star.insert_edge(0, 1, 3);
    star.insert_edge(0, 2, 5);
    star.insert_edge(0, 3, 4);
    EXPECT_GE(approx_mwm_static(star, R(1, 10)).weight(), R(9, 2));
    std::mt19937_64 rng(13);
    for (int it = 0; it < 300; ++it) {
        auto g = testutil::random_graph(rng, 2 + rng() % 8, 0.5, 50);
        ASSERT_GE(approx_mwm_static(g, R(1, 10)).weight(), R(9, 10) * testutil::brute_mwm(g));
    }
}

TEST(OracleEnumerate, Examples) {
    auto g = testutil::gadget();
    auto cls = restrict(g, WeightInterval(R(1), R(3, 2)));
    auto ms = enumerate_approx_mwms(cls, 0);
    ASSERT_EQ(ms.size(), 2u);
    EXPECT_TRUE(ms[0].contains(make_key(0, 1)));
    EXPECT_TRUE(ms[1].contains(make_key(1, 2)));

    DynamicGraph one;
    one.insert_edge(0, 1, 3);
    EXPECT_EQ(enumerate_approx_mwms(one, R(1, 2)).size(), 1u);

    DynamicGraph c4;
    c4.insert_edge(0, 1, 1);
    c4.insert_edge(1, 2, 1);
    c4.insert_edge(2, 3, 1);
    c4.insert_edge(3, 0, 1);
    auto pm = enumerate_approx_mwms(c4, 0);
    ASSERT_EQ(pm.size(), 2u);
    for (const auto& m : pm) EXPECT_EQ(m.size(), 2u);
}

TEST(OracleEnumerate, AllResultsAreMaximalAndGoodEnough) {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 100; ++it) {
        auto g = testutil::random_graph(rng, 2 + rng() % 6, 0.5, 6);
        Rational mu = testutil::brute_mwm(g);
        for (const auto& m : enumerate_approx_mwms(g, R(1, 4))) {
            ASSERT_GE(m.weight(), R(3, 4) * mu);
            for (const auto& e : g.edge_list()) ASSERT_FALSE(m.can_add(e.key()));
        }
    }
}

TEST(OracleMcm, Sizes) {
    DynamicGraph g;
    for (Vertex v = 0; v < 5; ++v) g.insert_edge(v, v + 1, 9);
    EXPECT_EQ(mcm_size(g), 3u);
    EXPECT_EQ(mcm_size(testutil::gadget()), 2u);
}

TEST(OracleSolver, TracksExactOptimum) {
    OracleSolver s;
    std::mt19937_64 rng(3);
    DynamicGraph shadow(9);
    for (int step = 0; step < 300; ++step) {
        Vertex a = rng() % 9, b = rng() % 9;
        if (a == b) continue;
        if (shadow.has_edge(a, b)) {
            auto w = shadow.erase_edge(a, b);
            s.update(make_erase(a, b, w));
        } else {
            Rational w = 1 + static_cast<long>(rng() % 10);
            shadow.insert_edge(a, b, w);
            s.update(make_insert(a, b, w));
        }
        ASSERT_EQ(s.matching().weight(), testutil::brute_mwm(shadow));
    }
}
