#include "dynmwm/census.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace dynmwm;
using testutil::R;

// Vertices a=0, b=1, c=2.
TEST(Census, InitTwoClasses) {
    Census c(2);
    auto d = c.init({Matching({WeightedEdge(0, 1, 1)}), Matching({WeightedEdge(1, 2, 100)})});
    EXPECT_EQ(c.matching().keys(), std::vector<EdgeKey>{make_key(1, 2)});
    EXPECT_EQ(d.added.size(), 1u);
    EXPECT_TRUE(c.characterization_holds());
}

TEST(Census, InitDisjointAndEmpty) {
    Census c(3);
    c.init({Matching({WeightedEdge(0, 1, 1)}), Matching({WeightedEdge(2, 3, 10)}), Matching({WeightedEdge(4, 5, 100)})});
    EXPECT_EQ(c.matching().size(), 3u);
    Census e(2);
    e.init({Matching(), Matching()});
    EXPECT_TRUE(e.matching().empty());
}

TEST(Census, InsertHigherClassEvicts) {
    Census c(2);
    c.init({Matching(), Matching()});
    c.insert(1, WeightedEdge(0, 1, 1));
    auto d = c.insert(2, WeightedEdge(1, 2, 100));
    ASSERT_EQ(d.removed.size(), 1u);
    EXPECT_EQ(d.removed[0].key(), make_key(0, 1));
    ASSERT_EQ(d.added.size(), 1u);
    EXPECT_EQ(d.added[0].key(), make_key(1, 2));
}

TEST(Census, InsertDisjointEnters) {
    Census c(2);
    c.init({Matching(), Matching()});
    c.insert(1, WeightedEdge(0, 1, 1));
    auto d = c.insert(1, WeightedEdge(2, 3, 1));
    EXPECT_TRUE(d.removed.empty());
    EXPECT_EQ(d.added.size(), 1u);
}

TEST(Census, InsertLowerClassBlocked) {
    Census c(2);
    c.init({Matching(), Matching({WeightedEdge(0, 2, 50)})});
    auto d = c.insert(1, WeightedEdge(0, 1, 1));
    EXPECT_TRUE(d.empty());
    EXPECT_FALSE(c.matching().contains(make_key(0, 1)));
}

TEST(Census, DeletePromotesWaitingEdge) {
    Census c(2);
    c.init({Matching({WeightedEdge(0, 1, 1)}), Matching({WeightedEdge(1, 2, 100)})});
    auto d = c.erase(2, make_key(1, 2));
    EXPECT_EQ(d.removed.size(), 1u);
    ASSERT_EQ(d.added.size(), 1u);
    EXPECT_EQ(d.added[0].key(), make_key(0, 1));
}

TEST(Census, DeleteIsolatedMatchedEdge) {
    Census c(1);
    c.init({Matching({WeightedEdge(0, 1, 1)})});
    auto d = c.erase(1, make_key(0, 1));
    EXPECT_EQ(d.removed.size(), 1u);
    EXPECT_TRUE(d.added.empty());
}

TEST(Census, DeleteUnmatchedMember) {
    // (0,1) class 1 is blocked by (1,2) class 3 and (0,3) class 2 is blocked by nothing.
    Census c(3);
    c.init({Matching({WeightedEdge(0, 1, 1)}), Matching({WeightedEdge(0, 3, 10)}), Matching({WeightedEdge(1, 2, 100)})});
    EXPECT_FALSE(c.matching().contains(make_key(0, 1)));
    auto d = c.erase(1, make_key(0, 1));
    EXPECT_TRUE(d.empty());
    EXPECT_TRUE(c.characterization_holds());
}

TEST(Census, PreconditionErrors) {
    Census c(2, {WeightInterval(R(1), R(2)), WeightInterval(R(20), R(40))});
    c.init({Matching(), Matching()});
    EXPECT_THROW(c.insert(1, WeightedEdge(0, 1, 5)), std::invalid_argument);  // outside class 1
    c.insert(1, WeightedEdge(0, 1, 1));
    EXPECT_THROW(c.insert(1, WeightedEdge(1, 2, 1)), std::invalid_argument);  // M_1 stops being a matching
    EXPECT_THROW(c.erase(2, make_key(0, 1)), std::invalid_argument);
    EXPECT_THROW(Census(2, {WeightInterval(R(1), R(2)), WeightInterval(R(1), R(2))}), std::invalid_argument);
}

TEST(Census, PackedPathAndFallback) {
    EXPECT_TRUE(Census(8).packed());
    EXPECT_TRUE(Census(64).packed());
    EXPECT_FALSE(Census(65).packed());
    NeighborIndex ix(8, true);
    ix.add(0, 3, make_key(0, 1));
    ix.add(0, 7, make_key(0, 2));
    EXPECT_EQ(ix.bits(0), (1ULL << (8 - 3)) | (1ULL << (8 - 7)));
    EXPECT_EQ(ix.top(0)->first, 7u);
    ix.remove(0, 7);
    EXPECT_EQ(ix.top(0)->first, 3u);
    EXPECT_TRUE(ix.consistent());
}

namespace {

// Random walk over member matchings with per-step checks; returns max recourse.
std::size_t run_random_census(std::size_t k, std::uint64_t seed, int steps, const Rational& eps) {
    std::vector<WeightInterval> iv;
    Rational lo = 1;
    for (std::size_t j = 0; j < k; ++j) {
        iv.emplace_back(lo, lo * 2);
        lo = lo * 2 / eps;
    }
    Census c(k, iv);
    c.init(std::vector<Matching>(k));
    std::mt19937_64 rng(seed);
    const Vertex n = 16;
    std::size_t worst = 0;
    for (int s = 0; s < steps; ++s) {
        std::size_t j = 1 + rng() % k;
        Vertex a = rng() % n, b = rng() % n;
        if (a == b) continue;
        auto key = make_key(a, b);
        MatchingDelta d;
        if (auto cls = c.class_of_member(key)) {
            d = c.erase(*cls, key);
        } else {
            const auto& mj = c.member(j);
            if (mj.is_matched(a) || mj.is_matched(b)) {
                // drop whatever blocks, one erase per step
                auto blk = mj.edge_at(mj.is_matched(a) ? a : b);
                d = c.erase(j, *blk);
            } else {
                Rational w = iv[j - 1].lo * (1 + Rational(static_cast<long>(rng() % 100), 100));
                d = c.insert(j, WeightedEdge(a, b, w));
            }
        }
        worst = std::max(worst, d.recourse());
        EXPECT_LE(d.recourse(), 3u);
        EXPECT_TRUE(c.characterization_holds());
        EXPECT_TRUE(c.locally_greedy());
        EXPECT_GE(c.matching().weight(), (1 - 4 * eps) * c.member_total());
        if (::testing::Test::HasFailure()) break;
    }
    return worst;
}

}  // namespace

TEST(Census, RandomTracesKeepInvariants) {
    for (std::size_t k : {3u, 8u, 40u, 70u}) run_random_census(k, 1000 + k, 3000, R(1, 6));
}
