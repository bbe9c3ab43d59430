#include "dynmwm/harness.hpp"
#include "dynmwm/low_degree.hpp"
#include "dynmwm/oracle.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dynmwm;
using testutil::R;

namespace {

std::vector<UpdateEvent> capped_trace(std::size_t n, std::size_t cap, long hi, std::size_t events, std::uint64_t seed) {
    TraceModel tm;
    tm.n = n;
    tm.max_degree = cap;
    tm.events = events;
    tm.seed = seed;
    tm.weights.lo = 1;
    tm.weights.hi = hi;
    return gen_trace(tm);
}

}  // namespace

TEST(LdBase, RadiusAndValidation) {
    LdBaseSolver s(R(1, 4), 3, R(4));
    EXPECT_EQ(s.radius(), 32u);
    EXPECT_THROW(LdBaseSolver(R(1, 4), 0, R(4)), std::invalid_argument);
    EXPECT_THROW(s.update(make_insert(0, 1, 5)), UpdateError);
}

TEST(LdBase, StarSwitchesToBestSpoke) {
    LdBaseSolver s(R(1, 4), 4, R(4));
    s.update(make_insert(0, 1, 1));
    s.update(make_insert(0, 2, 2));
    EXPECT_TRUE(s.matching().contains(make_key(0, 2)));
    s.update(make_insert(0, 3, 4));
    EXPECT_EQ(s.matching().keys(), std::vector<EdgeKey>{make_key(0, 3)});
}

TEST(LdBase, DegreeCapEnforced) {
    LdBaseSolver s(R(1, 4), 2, R(4));
    s.update(make_insert(0, 1, 1));
    s.update(make_insert(0, 2, 1));
    EXPECT_THROW(s.update(make_insert(0, 3, 1)), UpdateError);
}

TEST(LdBase, DegreeTwoCrossCheck) {
    const Rational eps = R(1, 4);
    LdBaseSolver s(eps, 2, R(8));
    for (const auto& ev : capped_trace(30, 2, 8, 2000, 17)) {
        s.update(ev);
        ASSERT_GE(s.matching().weight(), (1 - 2 * eps) * mwm_degree_two(s.graph()).weight());
        ASSERT_GE(s.matching().weight(), (1 - eps) * mwm_degree_two(s.graph()).weight());
    }
}

TEST(LdBase, RandomDegreeFourAudit) {
    const Rational eps = R(1, 4);
    LdBaseSolver s(eps, 4, R(4));
    for (const auto& ev : capped_trace(12, 4, 4, 1000, 23)) {
        s.update(ev);
        ASSERT_TRUE(is_subgraph_matching(s.matching(), s.graph()));
        ASSERT_GE(s.matching().weight(), (1 - eps) * mwm_best_exact(s.graph()).weight());
    }
}

TEST(LowDegree, SingleEdgeStream) {
    LowDegreeSolver s(R(1, 10), 3, 1, 1024);
    for (Vertex v = 0; v < 20; v += 2) {
        s.update(make_insert(v, v + 1, 1 + v * 50));
        EXPECT_EQ(s.matching().weight(), mwm_best_exact(s.graph()).weight());
    }
}

TEST(LowDegree, GadgetCycling) {
    const Rational eps = R(1, 10);
    LowDegreeSolver s(eps, 2, 1, 2);
    const double floor_ratio = 1 - kLowDegreeConstant * 0.1 * std::log2(10.0);
    auto g = testutil::gadget().edge_list();
    for (int round = 0; round < 20; ++round) {
        for (const auto& e : g) {
            s.update(make_insert(e.u, e.v, e.w));
            Rational mu = mwm_best_exact(s.graph()).weight();
            EXPECT_GE(to_double(s.matching().weight()), floor_ratio * to_double(mu));
            EXPECT_TRUE(is_subgraph_matching(s.matching(), s.graph()));
        }
        for (const auto& e : g) s.update(make_erase(e.u, e.v, e.w));
        EXPECT_TRUE(s.matching().empty());
    }
}

TEST(LowDegree, DegreeCapEnforced) {
    LowDegreeSolver s(R(1, 10), 1, 1, 16);
    s.update(make_insert(0, 1, 1));
    EXPECT_THROW(s.update(make_insert(1, 2, 1)), UpdateError);
}

TEST(LowDegree, RandomAuditAndRecourse) {
    const Rational eps = R(1, 10);
    LowDegreeSolver s(eps, 4, 1, 1024);
    RunOptions opts;
    opts.oracle_audit = true;
    auto trace = capped_trace(12, 4, 1024, 600, 31);
    auto r = run_trace(s, trace, opts);
    ASSERT_FALSE(r.invariant_failure) << r.error;
    ASSERT_TRUE(r.min_ratio.has_value());
    const double lg = std::log2(10.0);
    EXPECT_GE(to_double(*r.min_ratio), 1 - kLowDegreeConstant * 0.1 * lg);
    // Envelope c eps^-5 log^2(1/eps) with c = 1.
    EXPECT_LE(to_double(r.amortized_recourse()), 1e5 * lg * lg);
}
