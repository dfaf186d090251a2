#include <gtest/gtest.h>

#include <algorithm>
#include <tuple>

#include "fixtures.hpp"
#include "terraquad/candidate_chords.hpp"

using namespace terraquad;
using tq_test::t0;
using tq_test::t4;

namespace {

using Key = std::tuple<int, int>;

std::vector<Key> keys(const std::vector<CandidateEdge>& cs) {
    std::vector<Key> out;
    for (const auto& c : cs) out.emplace_back(c.i, c.j);
    std::sort(out.begin(), out.end());
    return out;
}

const CandidateEdge* find(const std::vector<CandidateEdge>& cs, int i, int j) {
    for (const auto& c : cs)
        if (c.i == i && c.j == j) return &c;
    return nullptr;
}

}  // namespace

TEST(ShortestPathTree, T0SeesEverythingFromTheBase) {
    ShortestPathTree spt = shortest_path_tree(t0(), TreeRoot::LEFT_BASE);
    EXPECT_EQ(spt.parent, (std::vector<int>{-1, 0, 0, 0}));
}

TEST(ShortestPathTree, T4SeesPastTheDip) {
    ShortestPathTree spt = shortest_path_tree(t4(), TreeRoot::LEFT_BASE);
    EXPECT_EQ(spt.parent[1], 0);
    EXPECT_EQ(spt.parent[2], 0);
    EXPECT_EQ(spt.parent[3], 2);
    EXPECT_EQ(spt.parent[0], -1);
}

TEST(ShortestPathTree, EdgesStayInside) {
    for (int i = 0; i < 60; ++i) {
        Terrain t = tq_test::random_terrain(i, 4, 60, 3000);
        for (TreeRoot root : {TreeRoot::LEFT_BASE, TreeRoot::RIGHT_BASE}) {
            ShortestPathTree spt = shortest_path_tree(t, root);
            for (std::size_t k = 0; k < t.size(); ++k) {
                if (spt.parent[k] < 0) continue;
                EXPECT_TRUE(contains_segment(t, {t[spt.parent[k]], t[k]})) << "seed " << i << " vertex " << k;
            }
        }
    }
}

TEST(ShortestPathTree, MirrorSymmetry) {
    for (int i = 0; i < 40; ++i) {
        Terrain t = tq_test::random_terrain(i, 4, 30, 3100);
        const int n = static_cast<int>(t.size());
        ShortestPathTree left = shortest_path_tree(mirror(t), TreeRoot::LEFT_BASE);
        ShortestPathTree right = shortest_path_tree(t, TreeRoot::RIGHT_BASE);
        for (int k = 0; k < n; ++k) {
            int pm = left.parent[n - 1 - k];
            EXPECT_EQ(pm < 0 ? -1 : n - 1 - pm, right.parent[k]);
        }
    }
}

TEST(CandidateEdges, T0) {
    CandidateSet cs = candidate_edges(t0());
    ASSERT_EQ(cs.left.size(), 2u);
    ASSERT_EQ(cs.right.size(), 2u);
    ASSERT_TRUE(find(cs.left, 0, 1));
    ASSERT_TRUE(find(cs.left, 0, 2));
    EXPECT_EQ(find(cs.left, 0, 1)->foot, (Point{0, 0}));
    EXPECT_EQ(find(cs.left, 0, 1)->tip, (Point{1, 2}));
    EXPECT_EQ(find(cs.left, 0, 2)->tip, (Point{3, 2}));
    ASSERT_TRUE(find(cs.right, 2, 3));
    ASSERT_TRUE(find(cs.right, 1, 3));
    EXPECT_EQ(find(cs.right, 2, 3)->foot, (Point{4, 0}));
    EXPECT_EQ(find(cs.right, 2, 3)->tip, (Point{3, 2}));
}

TEST(CandidateEdges, T4ContainsLongChord) {
    CandidateSet cs = candidate_edges(t4());
    const CandidateEdge* a = find(cs.left, 0, 2);
    ASSERT_NE(a, nullptr);
    EXPECT_NEAR(a->slope, 0.6, 1e-12);
    EXPECT_NEAR(a->foot.x, 0, 1e-12);
    EXPECT_NEAR(a->tip.x, 8.0 / 2.6, 1e-12);
    EXPECT_NEAR(a->tip.y, 0.6 * 8.0 / 2.6, 1e-12);
    EXPECT_EQ(a->tip_edge, 3);
    EXPECT_NE(find(cs.left, 0, 1), nullptr);
}

TEST(CandidateEdges, TriangleHasOnlyItsSides) {
    CandidateSet cs = candidate_edges(tq_test::triangle());
    ASSERT_EQ(cs.left.size(), 1u);
    ASSERT_EQ(cs.right.size(), 1u);
    EXPECT_EQ(keys(cs.left), (std::vector<Key>{{0, 1}}));
    EXPECT_EQ(keys(cs.right), (std::vector<Key>{{1, 2}}));
}

TEST(CandidateEdges, ChordInvariants) {
    for (int i = 0; i < 60; ++i) {
        Terrain t = tq_test::random_terrain(i, 4, 60, 3200);
        const double eps = t.tolerance().eps;
        CandidateSet cs = candidate_edges(t);
        EXPECT_LE(cs.left.size(), t.size());
        EXPECT_LE(cs.right.size(), t.size());
        for (const auto* side : {&cs.left, &cs.right}) {
            for (const auto& c : *side) {
                EXPECT_TRUE(contains_segment(t, c.segment()));
                EXPECT_NEAR(c.line.side(t[c.i]), 0.0, 1e-9 * t.width());
                EXPECT_NEAR(c.line.side(t[c.j]), 0.0, 1e-9 * t.width());
                EXPECT_NEAR(c.foot.y, 0.0, eps);
                if (c.side == ChordSide::LEFT) EXPECT_GT(c.slope, 0.0); else EXPECT_LT(c.slope, 0.0);
            }
        }
        for (const auto& c : cs.left) EXPECT_EQ(c.side, ChordSide::LEFT);
        for (const auto& c : cs.right) EXPECT_EQ(c.side, ChordSide::RIGHT);
    }
}

TEST(CandidateEdges, MatchesBruteForce) {
    for (int i = 0; i < 100; ++i) {
        Terrain t = tq_test::random_terrain(i, 4, 47, 4000);
        CandidateSet fast = candidate_edges(t);
        CandidateSet slow = candidate_edges_brute(t);
        ASSERT_EQ(keys(fast.left), keys(slow.left)) << "instance " << i;
        ASSERT_EQ(keys(fast.right), keys(slow.right)) << "instance " << i;
        for (const auto& c : fast.left) {
            const CandidateEdge* b = find(slow.left, c.i, c.j);
            EXPECT_TRUE(near(c.tip, b->tip, 1e-9 * t.width()));
            EXPECT_EQ(c.tip_edge, b->tip_edge);
        }
    }
}
