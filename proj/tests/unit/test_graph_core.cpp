#include "dynmwm/graph.hpp"
#include "dynmwm/matching.hpp"
#include "dynmwm/trace.hpp"
#include "dynmwm/weights.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace dynmwm;
using testutil::R;

TEST(Rational, ParseAndFormatRoundTrip) {
    EXPECT_EQ(parse_rational("3/4"), R(3, 4));
    EXPECT_EQ(parse_rational("1.25"), R(5, 4));
    EXPECT_EQ(parse_rational("-3"), R(-3));
    EXPECT_EQ(format_rational(R(5, 4)), "1.25");
    EXPECT_EQ(format_rational(R(1, 3)), "1/3");
    for (auto x : {R(7), R(1, 3), R(22, 7), R(3, 2), R(1, 1024), R(123456789, 1000)})
        EXPECT_EQ(parse_rational(format_rational(x)), x);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Rational, Logs) {
    EXPECT_EQ(floor_log(R(1000000), R(10)), 6);
    EXPECT_EQ(floor_log(R(999999), R(10)), 5);
    EXPECT_EQ(ceil_log(R(1000001), R(10)), 7);
    EXPECT_EQ(floor_log(R(1, 10), R(10)), -1);
    EXPECT_TRUE(pow_ge(R(8), R(2), R(3)));
    EXPECT_FALSE(pow_ge(R(7), R(2), R(3)));
    EXPECT_TRUE(pow_ge(R(1000), R(10), R(5, 2)));   // 10^2.5 ~ 316
    EXPECT_FALSE(pow_ge(R(316), R(10), R(5, 2)));
}

TEST(GraphCore, EdgeCanonicalOrderAndNoSelfLoop) {
    WeightedEdge e(5, 2, R(3));
    EXPECT_EQ(e.u, 2u);
    EXPECT_EQ(e.v, 5u);
    EXPECT_THROW(make_key(3, 3), std::invalid_argument);
    EXPECT_THROW(WeightedEdge(1, 2, R(0)), std::invalid_argument);
    EXPECT_THROW(WeightedEdge(1, 2, R(-1)), std::invalid_argument);
}

TEST(GraphCore, ApplyUpdateExamples) {
    DynamicGraph g;
    auto d = apply_update(g, make_insert(1, 2, R(3)));
    EXPECT_EQ(g.edge_count(), 1u);
    EXPECT_EQ(d.edge.key(), make_key(1, 2));
    apply_update(g, make_erase(1, 2, R(3)));
    EXPECT_EQ(g.edge_count(), 0u);

    DynamicGraph h;
    apply_update(h, make_insert(1, 2, R(5)));
    EXPECT_THROW(apply_update(h, make_insert(1, 2, R(7))), UpdateError);
    EXPECT_THROW(apply_update(h, make_erase(2, 3, R(1))), UpdateError);
}

TEST(GraphCore, AdjacencyAgreesWithEdgeIndex) {
    std::mt19937_64 rng(11);
    DynamicGraph g(10);
    for (int step = 0; step < 2000; ++step) {
        Vertex a = rng() % 10, b = rng() % 10;
        if (a == b) continue;
        if (g.has_edge(a, b)) g.erase_edge(a, b);
        else g.insert_edge(a, b, R(1 + static_cast<long>(rng() % 9)));
        std::size_t deg_sum = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            deg_sum += g.degree(v);
            for (Vertex x : g.neighbors(v)) ASSERT_TRUE(g.has_edge(v, x));
        }
        ASSERT_EQ(deg_sum, 2 * g.edge_count());
    }
}

TEST(GraphCore, AspectRatio) {
    auto g = testutil::gadget();
    EXPECT_EQ(g.aspect_ratio(), R(3, 2));
    EXPECT_EQ(DynamicGraph().aspect_ratio(), R(1));
}

TEST(GraphCore, RestrictExamples) {
    auto g = testutil::gadget();
    auto a = restrict(g, WeightInterval(R(1), R(3, 2)));
    EXPECT_EQ(a.edge_count(), 2u);
    EXPECT_TRUE(a.has_edge(0, 1));
    EXPECT_TRUE(a.has_edge(1, 2));
    EXPECT_EQ(restrict(g, WeightInterval(R(1, 10), R(100))), g);
    EXPECT_EQ(restrict(g, WeightInterval(R(2), R(3))).edge_count(), 0u);
    EXPECT_THROW(WeightInterval(R(2), R(2)), std::invalid_argument);
    EXPECT_THROW(WeightInterval(R(0), R(2)), std::invalid_argument);
}

TEST(GraphCore, RestrictUnionOfAdjacentIntervals) {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 200; ++it) {
        auto g = testutil::random_graph(rng, 8, 0.5, 40);
        Rational l = 1 + static_cast<long>(rng() % 10), m = l + static_cast<long>(rng() % 15) + 1,
                 r = m + static_cast<long>(rng() % 15) + 1;
        auto a = restrict(g, {l, m}), b = restrict(g, {m, r}), whole = restrict(g, {l, r});
        DynamicGraph u = a;
        for (const auto& e : b.edge_list()) u.insert_edge(e);
        ASSERT_EQ(u, whole);
    }
}

TEST(WeightPartition, DegenerateRange) {
    auto p = build_partition(R(1), R(1), R(4), R(1, 6), false);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.intervals[0], WeightInterval(R(1), R(4)));
}

TEST(WeightPartition, PaddedDecadesFrozen) {
    auto p = build_partition(R(1), R(1000000), R(10), R(1, 10), true);
    ASSERT_EQ(p.size(), 6u);
    ASSERT_EQ(p.padded.size(), 6u);
    // Frozen from direct arithmetic: interval i (1-based) is [10^(i-1), 10^i),
    // padded [10^(i-1) / 10, 10^(i+1)).
    for (long i = 1; i <= 6; ++i) {
        EXPECT_EQ(p.intervals[i - 1], WeightInterval(rational_pow(10, i - 1), rational_pow(10, i)));
        EXPECT_EQ(p.padded[i - 1], WeightInterval(rational_pow(10, i - 1) * R(1, 10), rational_pow(10, i + 1)));
    }
    EXPECT_EQ(p.padded[0].lo, R(1, 10));
    EXPECT_EQ(p.padded[5].hi, R(10000000));
}

TEST(WeightPartition, RejectsEpsOutOfRange) {
    EXPECT_THROW(build_partition(R(1), R(10), R(2), R(1, 5), false), std::invalid_argument);
    EXPECT_THROW(build_partition(R(1), R(10), R(2), R(0), false), std::invalid_argument);
    EXPECT_THROW(build_partition(R(1), R(10), R(1), R(1, 6), false), std::invalid_argument);
}

TEST(WeightPartition, WideCoveringAndMultiplicity) {
    std::mt19937_64 rng(3);
    const std::vector<Rational> deltas = {R(2), R(3, 2), R(10), R(1000)};
    const std::vector<Rational> epss = {R(1, 6), R(1, 10), R(1, 20)};
    for (const auto& delta : deltas)
        for (const auto& eps : epss) {
            Rational wmax = 1 + static_cast<long>(rng() % 100000);
            auto p = build_partition(R(1), wmax, delta, eps, true);
            ASSERT_TRUE(p.is_wide(delta));
            ASSERT_LE(static_cast<long>(p.size()), std::max(1L, ceil_log(wmax, delta)));
            EXPECT_EQ(p.intervals.front().lo, R(1));
            for (std::size_t i = 0; i + 1 < p.size(); ++i) ASSERT_EQ(p.intervals[i].hi, p.intervals[i + 1].lo);
            long bound = padded_multiplicity_bound(delta, eps);
            for (int k = 0; k < 300; ++k) {
                Rational w = Rational(1 + static_cast<long>(rng() % 1000000), 1000000) * (wmax - 1) + 1;
                auto c = p.class_of(w);
                ASSERT_TRUE(c.has_value());
                std::size_t hits = 0;
                for (const auto& I : p.intervals) hits += (I.contains(w) || (&I == &p.intervals.back() && w == I.hi));
                ASSERT_EQ(hits, 1u);
                ASSERT_LE(static_cast<long>(p.padded_classes_of(w).size()), bound);
            }
        }
}

TEST(WeightPartition, StrictPartitionHoldsTopWeightInside) {
    auto p = build_strict_partition(R(1), R(1000), R(10), R(1, 10), false);
    ASSERT_EQ(p.size(), 4u);
    EXPECT_TRUE(p.intervals.back().contains(R(1000)));
}

TEST(Matching, WeightIsExactUnderMutation) {
    std::mt19937_64 rng(17);
    Matching m;
    for (int step = 0; step < 5000; ++step) {
        Vertex a = rng() % 16, b = rng() % 16;
        if (a == b) continue;
        auto k = make_key(a, b);
        if (m.contains(k)) m.remove(k);
        else if (m.can_add(k)) m.add(k, Rational(1 + static_cast<long>(rng() % 97), 1 + static_cast<long>(rng() % 13)));
        Rational sum = 0;
        for (const auto& [key, w] : m.edges()) sum += w;
        ASSERT_EQ(sum, m.weight());
        ASSERT_TRUE(is_valid_matching(m));
    }
    EXPECT_THROW(([] {
                     Matching x;
                     x.add(make_key(0, 1), 1);
                     x.add(make_key(1, 2), 1);
                 }()),
                 std::invalid_argument);
}

TEST(Matching, DiffAndApplyDelta) {
    Matching a({WeightedEdge(0, 1, 1), WeightedEdge(2, 3, 2)});
    Matching b({WeightedEdge(1, 2, 5), WeightedEdge(3, 4, 1)});
    auto d = diff(a, b);
    EXPECT_EQ(d.recourse(), 4u);
    apply_delta(a, d);
    EXPECT_EQ(a, b);
}

TEST(Matching, SymmetricDifferenceComponents) {
    Matching a({WeightedEdge(0, 1, 1), WeightedEdge(2, 3, 1)});
    Matching b({WeightedEdge(1, 2, 1), WeightedEdge(3, 0, 1)});
    auto cs = symmetric_difference_components(a, b);
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_TRUE(cs[0].cycle);
    EXPECT_EQ(cs[0].edges.size(), 4u);
    EXPECT_TRUE(cs[0].edges[0].from_a);
}

TEST(Trace, RoundTripIsBitExact) {
    std::vector<UpdateEvent> evs = {make_insert(0, 1, R(3, 2), 1), make_insert(1, 2, R(1, 3), 2),
                                    make_erase(0, 1, R(3, 2), 3), make_insert(4, 7, R(1000000007, 1000), 4)};
    std::ostringstream out;
    write_trace(out, evs);
    std::istringstream in(out.str());
    auto back = read_trace(in);
    EXPECT_EQ(back, evs);
    std::ostringstream again;
    write_trace(again, back);
    EXPECT_EQ(again.str(), out.str());
    EXPECT_EQ(format_event(evs[0]), "i 0 1 1.5 1");
    EXPECT_THROW(parse_event("x 0 1 1 1"), std::invalid_argument);
}

TEST(Trace, ReplayRejectsIllegalEvents) {
    EXPECT_THROW(replay({make_insert(0, 1, 1, 1), make_insert(1, 0, 2, 2)}), UpdateError);
    EXPECT_EQ(replay({make_insert(0, 1, 1, 1), make_erase(0, 1, 1, 2)}).edge_count(), 0u);
}
