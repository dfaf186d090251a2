#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "invariants.hpp"
#include "terraquad/butterfly.hpp"
#include "terraquad/hull.hpp"
#include "terraquad/quad_solver.hpp"

using namespace terraquad;
using tq_test::t0;
using tq_test::t4;

namespace {

const CandidateEdge& chord(const std::vector<CandidateEdge>& cs, int i, int j) {
    for (const auto& c : cs)
        if (c.i == i && c.j == j) return c;
    throw std::runtime_error("chord not found");
}

}  // namespace

TEST(QuadFromLines, Trapezoid) {
    auto q = quad_from_lines(Line::from_slope(2, 0), Line::horizontal(2), Line::from_slope(-2, 8));
    ASSERT_TRUE(q);
    EXPECT_TRUE(near(q->alpha, {0, 0}, 1e-12));
    EXPECT_TRUE(near(q->beta, {1, 2}, 1e-12));
    EXPECT_TRUE(near(q->gamma, {3, 2}, 1e-12));
    EXPECT_TRUE(near(q->delta, {4, 0}, 1e-12));
    EXPECT_NEAR(q->area(), 6.0, 1e-12);
}

TEST(QuadFromLines, LowerTop) {
    auto q = quad_from_lines(Line::from_slope(2, 0), Line::horizontal(1.2), Line::from_slope(-2, 8));
    ASSERT_TRUE(q);
    EXPECT_NEAR(q->area(), 4.08, 1e-12);
    EXPECT_TRUE(near(q->beta, {0.6, 1.2}, 1e-12));
    EXPECT_TRUE(near(q->gamma, {3.4, 1.2}, 1e-12));
}

TEST(QuadFromLines, Infeasible) {
    EXPECT_FALSE(quad_from_lines(Line::from_slope(2, 0), Line::from_slope(-0.8, 2.8), Line::from_slope(-2, 8)));
    // top above the apex
    EXPECT_FALSE(quad_from_lines(Line::from_slope(2, 0), Line::horizontal(5), Line::from_slope(-2, 8)));
    // top below the base
    EXPECT_FALSE(quad_from_lines(Line::from_slope(2, 0), Line::horizontal(-1), Line::from_slope(-2, 8)));
}

TEST(LowerHullBetween, T4) {
    Terrain t = t4();
    CandidateSet cs = candidate_edges(t);
    auto hull = lower_hull_between(t, chord(cs.left, 0, 1), chord(cs.right, 3, 4));
    ASSERT_EQ(hull.size(), 3u);
    EXPECT_EQ(hull[0], (Point{1, 2}));
    EXPECT_EQ(hull[1], (Point{2, 1.2}));
    EXPECT_EQ(hull[2], (Point{3, 2}));
}

TEST(LowerHullBetween, T0AndTriangle) {
    Terrain t = t0();
    CandidateSet cs = candidate_edges(t);
    auto hull = lower_hull_between(t, cs.left[0], cs.right[0]);
    EXPECT_EQ(hull, (std::vector<Point>{{1, 2}, {3, 2}}));

    Terrain tri = tq_test::triangle();
    CandidateSet ct = candidate_edges(tri);
    auto apex = lower_hull_between(tri, ct.left[0], ct.right[0]);
    EXPECT_EQ(apex, (std::vector<Point>{{2, 2}}));
    EXPECT_THROW(lower_hull_between(tri, ct.right[0], ct.left[0]), std::invalid_argument);
}

TEST(Butterfly, CenterAndClass) {
    // chords crossing at (2, 1); the tips on the far side close above it
    auto b = make_butterfly({{0, 0}, {4, 2}}, {{0, 2}, {4, 0}});
    ASSERT_TRUE(b);
    EXPECT_TRUE(near(b->center, {2, 1}, 1e-12));
    EXPECT_FALSE(b->apex);  // tips x = 0 and x = 4 are parallel
    EXPECT_EQ(classify(*b, {{0, 0}, {4, 2}}, {2, 0}), ButterflyClass::A);

    // tips x = 0 and y = 2x - 6 meet at (0, -6), below the chord like (2, 0)
    auto w = make_butterfly({{0, 0}, {4, 2}}, {{0, 2}, {3, 0}});
    ASSERT_TRUE(w);
    ASSERT_TRUE(w->apex);
    EXPECT_TRUE(near(*w->apex, {0, -6}, 1e-12));
    EXPECT_EQ(classify(*w, {{0, 0}, {4, 2}}, {2, 0}), ButterflyClass::V);
    EXPECT_EQ(classify(*w, {{0, 0}, {4, 2}}, {2, 3}), ButterflyClass::A);
    EXPECT_FALSE(make_butterfly({{0, 0}, {1, 1}}, {{0, 1}, {1, 2}}));
}

TEST(OptimalTopChord, T4IsBalancedAtTheDip) {
    Terrain t = t4();
    CandidateSet cs = candidate_edges(t);
    for (bool linear : {false, true}) {
        TopChordOutcome oc = optimal_top_chord(t, chord(cs.left, 0, 1), chord(cs.right, 3, 4), linear);
        ASSERT_TRUE(oc.best);
        EXPECT_EQ(oc.best->kind, TopChordKind::BALANCED);
        EXPECT_NEAR(oc.best->area, 4.08, 1e-12);
        EXPECT_TRUE(near(midpoint(oc.best->chord.a, oc.best->chord.b), {2, 1.2}, 1e-12));
        EXPECT_TRUE(near(oc.best->chord.a, {0.6, 1.2}, 1e-12));
        EXPECT_TRUE(near(oc.best->chord.b, {3.4, 1.2}, 1e-12));
    }
}

TEST(OptimalTopChord, T0IsTheTopEdge) {
    Terrain t = t0();
    CandidateSet cs = candidate_edges(t);
    TopChordOutcome oc = optimal_top_chord(t, cs.left[0], cs.right[0]);
    ASSERT_TRUE(oc.best);
    EXPECT_EQ(oc.best->kind, TopChordKind::EXTREMAL);
    EXPECT_NEAR(oc.best->area, 6.0, 1e-12);
    EXPECT_NEAR(oc.best->slope, 0.0, 1e-15);
}

TEST(OptimalTopChord, EmptyWedgeIsInfeasible) {
    Terrain t = tq_test::triangle();
    CandidateSet cs = candidate_edges(t);
    TopChordOutcome oc = optimal_top_chord(t, cs.left[0], cs.right[0]);
    EXPECT_FALSE(oc.best);
    EXPECT_NEAR(oc.sup_area, 4.0, 1e-12);
}

TEST(OptimalTopChord, BalancedChordsAreBisected) {
    int balanced = 0;
    for (int i = 0; i < 80; ++i) {
        Terrain t = tq_test::random_terrain(i, 5, 20, 6000);
        CandidateSet cs = candidate_edges(t);
        for (const auto& l : cs.left) {
            for (const auto& r : cs.right) {
                TopChordOutcome oc = optimal_top_chord(t, l, r);
                if (!oc.best) continue;
                EXPECT_TRUE(contains_quad(t, oc.best->quad));
                if (oc.best->kind != TopChordKind::BALANCED) continue;
                ++balanced;
                Point m = midpoint(oc.best->chord.a, oc.best->chord.b);
                double best = 1e300;
                for (const Point& v : t.vertices()) best = std::min(best, distance(m, v));
                EXPECT_LE(best, 1e-9 * t.width());
            }
        }
    }
    EXPECT_GT(balanced, 0);
}

// Area of the quad cut by each hull edge rises then falls along the hull.
TEST(OptimalTopChord, AreaUnimodalAlongHull) {
    int pairs = 0;
    for (int i = 0; pairs < 100 && i < 400; ++i) {
        Terrain t = tq_test::random_terrain(i, 8, 30, 7000);
        CandidateSet cs = candidate_edges(t);
        for (const auto& l : cs.left) {
            for (const auto& r : cs.right) {
                if (pairs >= 100) break;
                auto areas = tq_test::hull_edge_areas(t, l, r);
                if (!areas || areas->size() < 3) continue;
                EXPECT_TRUE(tq_test::single_peak(*areas, 1e-9)) << "instance " << i;
                ++pairs;
            }
        }
    }
    EXPECT_EQ(pairs, 100);
}

TEST(OptimalTopChord, BinarySearchMatchesScan) {
    for (int i = 0; i < 120; ++i) {
        Terrain t = tq_test::random_terrain(i, 4, 25, 8000);
        CandidateSet cs = candidate_edges(t);
        for (const auto& l : cs.left) {
            for (const auto& r : cs.right) {
                TopChordOutcome a = optimal_top_chord(t, l, r, false);
                TopChordOutcome b = optimal_top_chord(t, l, r, true);
                ASSERT_EQ(a.best.has_value(), b.best.has_value()) << "instance " << i;
                if (a.best) {
                    EXPECT_NEAR(a.best->area, b.best->area, 1e-9 * std::max(1.0, b.best->area));
                }
                EXPECT_NEAR(a.sup_area, b.sup_area, 1e-9 * std::max(1.0, b.sup_area));
            }
        }
    }
}
