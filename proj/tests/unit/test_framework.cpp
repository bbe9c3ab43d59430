#include "dynmwm/framework.hpp"
#include "dynmwm/harness.hpp"
#include "dynmwm/low_recourse.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace dynmwm;
using testutil::R;

namespace {

FrameworkConfig config(FrameworkMode mode, int depth, const Rational& max_weight, const Rational& eps = R(1, 10)) {
    FrameworkConfig c;
    c.eps = eps;
    c.mode = mode;
    c.depth = depth;
    c.max_weight = max_weight;
    return c;
}

// Replays a random trace, checking routing and the documented bound after every step.
Rational audit_random(FrameworkSolver& s, const Rational& C, std::uint64_t seed, int steps, long levels,
                      bool insert_only = false) {
    TraceModel tm;
    tm.kind = insert_only ? TraceModelKind::insert_only : TraceModelKind::uniform_random;
    tm.n = 12;
    tm.events = static_cast<std::size_t>(steps);
    tm.seed = seed;
    tm.weights.kind = WeightDistKind::geometric;
    tm.weights.base = 2;
    tm.weights.levels = levels;
    Rational worst = 1;
    const Rational floor_ratio = 1 - C * s.config().eps;
    for (const auto& ev : gen_trace(tm)) {
        s.update(ev);
        const auto& g = s.graph();
        for (const auto& [k, w] : g.edges()) {
            auto want = s.expected_leaves(w);
            EXPECT_EQ(s.leaves_holding(k), want) << "routing of " << to_string(k);
        }
        EXPECT_TRUE(is_subgraph_matching(s.matching(), g));
        Rational mu = mwm_best_exact(g).weight();
        if (mu > 0) {
            Rational r = s.matching().weight() / mu;
            worst = std::min(worst, r);
            EXPECT_GE(r, floor_ratio);
        }
        if (::testing::Test::HasFailure()) break;
    }
    return worst;
}

}  // namespace

TEST(Framework, Constants) {
    // g = ceil(log_{1/eps^3}(1/eps^3)) + 1 = 2 at every eps.
    EXPECT_EQ(standard_constant(R(1, 10)), R(14) + 8 * R(14, 10) + 2);
    EXPECT_EQ(tree_constant(R(1, 10), 0), standard_constant(R(1, 10)));
    EXPECT_EQ(tree_constant(R(1, 10), 2), 225 * standard_constant(R(1, 10)));
    // ultimate: g = ceil(log2 1000) + 1 = 11
    EXPECT_EQ(ultimate_constant(R(1, 10)), R(77) + 8 * R(14, 10) + tree_constant(R(1, 10), 3));
}

TEST(Framework, TwoDisjointEdgesFarApart) {
    FrameworkSolver s(config(FrameworkMode::standard, 0, R(1000000)));
    s.update(make_insert(0, 1, 1));
    s.update(make_insert(2, 3, 1000000));
    EXPECT_EQ(s.matching().weight(), R(1000001));
    EXPECT_EQ(s.matching().size(), 2u);
}

TEST(Framework, GadgetSingleClass) {
    FrameworkSolver s(config(FrameworkMode::standard, 0, R(3, 2)));
    EXPECT_EQ(s.top_group(), 0);
    EXPECT_EQ(s.class_count(), 1u);
    for (const auto& e : testutil::gadget().edge_list()) s.update(make_insert(e.u, e.v, e.w));
    EXPECT_GE(s.matching().weight(), R(9, 10) * R(5, 2));
    EXPECT_EQ(s.matching(), s.class_matchings()[0]);
}

TEST(Framework, EmptyGraph) {
    FrameworkSolver s(config(FrameworkMode::standard, 0, R(1000)));
    EXPECT_TRUE(s.matching().empty());
}

TEST(Framework, BorderGroupReachesTwoClasses) {
    FrameworkSolver s(config(FrameworkMode::standard, 0, R(1000000)));
    EXPECT_EQ(s.top_group(), 6);
    EXPECT_EQ(s.class_count(), 3u);
    // group 2 (weights in [100, 1000)) is the top guard of class 1 and inside class 2
    EXPECT_EQ(s.expected_leaves(R(500)), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(s.expected_leaves(R(50)), (std::vector<std::size_t>{0}));
    s.update(make_insert(0, 1, 500));
    EXPECT_EQ(s.leaves_holding(make_key(0, 1)), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(s.stats().inner_inserts, 2u);
}

TEST(Framework, DeleteUniqueEdgeEmptiesEverything) {
    FrameworkSolver s(config(FrameworkMode::standard, 0, R(1000000)));
    s.update(make_insert(0, 1, 500));
    s.update(make_erase(0, 1, 500));
    EXPECT_TRUE(s.matching().empty());
    for (const auto& m : s.class_matchings()) EXPECT_TRUE(m.empty());
    EXPECT_TRUE(s.leaves_holding(make_key(0, 1)).empty());
}

TEST(Framework, RejectsOutOfRangeInput) {
    EXPECT_THROW(FrameworkSolver(config(FrameworkMode::standard, 0, R(100), R(1, 5))), std::invalid_argument);
}

TEST(Framework, StandardRandomAudit) {
    FrameworkSolver s(config(FrameworkMode::standard, 0, rational_pow(2, 19)));
    audit_random(s, standard_constant(R(1, 10)), 42, 1000, 19);
}

TEST(Framework, InsertOnlyNeverDeletesInner) {
    FrameworkSolver s(config(FrameworkMode::standard, 0, rational_pow(2, 19)));
    audit_random(s, standard_constant(R(1, 10)), 9, 60, 19, true);
    EXPECT_EQ(s.stats().inner_erases, 0u);
    EXPECT_GT(s.stats().inner_inserts, 0u);
}

TEST(FrameworkTree, DepthZeroMatchesStandard) {
    FrameworkSolver a(config(FrameworkMode::standard, 0, rational_pow(2, 19)));
    FrameworkSolver b(config(FrameworkMode::tree, 0, rational_pow(2, 19)));
    TraceModel tm;
    tm.n = 10;
    tm.events = 300;
    tm.seed = 4;
    tm.weights.kind = WeightDistKind::geometric;
    tm.weights.levels = 19;
    for (const auto& ev : gen_trace(tm)) {
        a.update(ev);
        b.update(ev);
        ASSERT_EQ(a.matching(), b.matching());
    }
}

TEST(FrameworkTree, DepthOneLeafRanges) {
    // Single class covering exponents [-1, 4) of base 1/eps; the midpoint is 1.5 and
    // each half reaches one group past it.
    FrameworkSolver s(config(FrameworkMode::tree, 1, R(100)));
    ASSERT_EQ(s.class_count(), 1u);
    auto ranges = s.leaf_ranges();
    ASSERT_EQ(ranges.size(), 2u);
    EXPECT_EQ(ranges[0].x, R(-1));
    EXPECT_EQ(ranges[0].y, R(5, 2));
    EXPECT_EQ(ranges[1].x, R(1, 2));
    EXPECT_EQ(ranges[1].y, R(4));
    EXPECT_TRUE(ranges[0].contains(R(316)));
    EXPECT_FALSE(ranges[0].contains(R(317)));  // 10^2.5 ~ 316.2
    EXPECT_FALSE(ranges[1].contains(R(3)));
    EXPECT_TRUE(ranges[1].contains(R(4)));
}

TEST(FrameworkTree, DepthsOneToThreeAudit) {
    for (int d = 1; d <= 3; ++d) {
        FrameworkSolver s(config(FrameworkMode::tree, d, rational_pow(2, 19)));
        EXPECT_EQ(s.leaf_count(), s.class_count() << d);
        audit_random(s, tree_constant(R(1, 10), d), 100 + d, 250, 19);
    }
}

TEST(FrameworkUltimate, ClassCountAndMultiplicity) {
    FrameworkSolver s(config(FrameworkMode::ultimate, 0, rational_pow(2, 20)));
    EXPECT_EQ(s.class_count(), 21u);
    // eps 2^t <= w < 2^(t+1) / eps holds for t in [k-4, k+3] at w = 2^k (away from the ends)
    for (long k = 0; k <= 20; ++k) {
        auto hit = s.expected_leaves(rational_pow(2, k));
        EXPECT_LE(hit.size(), 8u);
        EXPECT_GE(hit.size(), 1u);
        if (k >= 4 && k <= 17) EXPECT_EQ(hit.size(), 8u);
    }
}

TEST(FrameworkUltimate, SingleClassGraphReducesToInner) {
    FrameworkSolver s(config(FrameworkMode::ultimate, 0, R(1)));
    EXPECT_EQ(s.class_count(), 1u);
    s.update(make_insert(0, 1, 1));
    s.update(make_insert(1, 2, 1));
    EXPECT_EQ(s.matching().weight(), 1);
    EXPECT_EQ(s.matching(), s.class_matchings()[0]);
}

TEST(FrameworkUltimate, RandomAudit) {
    FrameworkSolver s(config(FrameworkMode::ultimate, 0, rational_pow(2, 19)));
    audit_random(s, ultimate_constant(R(1, 10)), 77, 200, 19);
}

TEST(FrameworkInner, LowRecourseInnerRuns) {
    auto c = config(FrameworkMode::standard, 0, rational_pow(2, 12));
    c.inner = [](const InnerSpec& spec) -> std::unique_ptr<DynamicSolver> {
        return std::make_unique<LowRecourseSolver>(std::make_unique<OracleSolver>(OracleKind::best, true), spec.eps,
                                                   spec.aspect_ratio);
    };
    FrameworkSolver s(c);
    TraceModel tm;
    tm.n = 10;
    tm.events = 200;
    tm.seed = 8;
    tm.weights.kind = WeightDistKind::geometric;
    tm.weights.levels = 12;
    for (const auto& ev : gen_trace(tm)) {
        s.update(ev);
        ASSERT_TRUE(is_subgraph_matching(s.matching(), s.graph()));
    }
}

TEST(UnionMergerTest, RefcountsSharedEdges) {
    UnionMerger m(std::make_unique<DegreeTwoSolver>(R(1, 10)));
    WeightedEdge e(0, 1, 3);
    MatchingDelta add;
    add.added.push_back(e);
    m.apply({add, add});
    EXPECT_TRUE(m.matching().contains(e.key()));
    MatchingDelta rem;
    rem.removed.push_back(e);
    m.apply({rem});
    EXPECT_TRUE(m.matching().contains(e.key()));  // still held by the other child
    m.apply({rem});
    EXPECT_FALSE(m.matching().contains(e.key()));
}

TEST(DeltaAccumulatorTest, CancelsRoundTrips) {
    DeltaAccumulator acc;
    WeightedEdge e(0, 1, 3);
    MatchingDelta a;
    a.added.push_back(e);
    MatchingDelta r;
    r.removed.push_back(e);
    acc.add(a);
    acc.add(r);
    EXPECT_TRUE(acc.take().empty());
}
