#include "doctest.h"

#include <gmpxx.h>

#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "ysys/contfrac.hpp"
#include "ysys/geometry.hpp"
#include "ysys/schedule.hpp"
#include "ysys/solutions.hpp"

using namespace ysys;

namespace {

ContinuedFractionTable tab(std::vector<int> n) {
    return build_table(InputSequence{std::move(n)});
}

long mod(long x, long m) { return ((x % m) + m) % m; }

QuadIndices qi(long a, long b, long c, long d) {
    QuadIndices q;
    q.alpha = a;
    q.beta = b;
    q.gamma = c;
    q.delta = d;
    return q;
}

mpq_class q(long num, long den = 1) { return mpq_class(num, den); }

}  // namespace

TEST_CASE("hour-hand arrival order visits every vertex once") {
    SUBCASE("one-term family: the hand advances one vertex per step") {
        const auto t = tab({6});
        const TimeOrderedIndex ix = time_ordered_index(t);
        REQUIRE(ix.r == 7);
        for (long v = 0; v < 7; ++v) {
            CHECK(ix.at_vertex(v) == v);
            CHECK(ix.vertex(v) == v);
        }
    }
    SUBCASE("two-term family goldens") {
        const auto t = tab({6, 4});
        const TimeOrderedIndex ix = time_ordered_index(t);
        REQUIRE(ix.r == 31);
        CHECK(ix.at_vertex(0) == 0);
        CHECK(ix.at_vertex(5) == 1);   // the hand's first stop is vertex r^(2)
        CHECK(ix.vertex(1) == 5);
        CHECK(ix.vertex(2) == 10);
        CHECK(ix.at_vertex(1) == 25);  // 25 * 5 = 125 = 4*31 + 1
    }
    SUBCASE("three-term family goldens") {
        const auto t = tab({6, 4, 3});
        const TimeOrderedIndex ix = time_ordered_index(t);
        REQUIRE(ix.r == 106);
        CHECK(ix.at_vertex(0) == 0);
        CHECK(ix.at_vertex(17) == 1);
        CHECK(ix.at_vertex(34) == 2);
        CHECK(ix.vertex(3) == 51);
    }
    SUBCASE("bijection, step law, and the per-generation index law") {
        for (auto fam : {std::vector<int>{3}, {7}, {2, 3}, {3, 3}, {6, 4},
                         {2, 3, 2}, {6, 4, 3}, {2, 2, 1, 3}}) {
            const auto t = tab(fam);
            const TimeOrderedIndex ix = time_ordered_index(t);
            const long r = ix.r;
            std::set<long> seen(ix.vertex_of.begin(), ix.vertex_of.end());
            CHECK(static_cast<long>(seen.size()) == r);
            for (long i = 0; i < r; ++i) {
                CHECK(ix.at_vertex(ix.vertex(i)) == i);
                CHECK(mod(ix.vertex(i + 1) - ix.vertex(i), r) ==
                      mod(t.r_l(2), r));
            }
            // Advancing a vertex by r^(a+1) advances the arrival index by
            // p_a, with the generation's alternating sign.
            for (int a = 1; a <= t.F(); ++a)
                for (long v = 0; v < r; ++v)
                    CHECK(mod(ix.at_vertex(v + t.r_l(a + 1)) -
                                  ix.at_vertex(v),
                              r) == mod(t.eps(a) * t.p_l(a), r));
            // Accessors reduce any representative.
            CHECK(ix.at_vertex(-1) == ix.at_vertex(r - 1));
            CHECK(ix.vertex(-2) == ix.vertex(r - 2));
            CHECK(ix.at_vertex(3 * r + 1) == ix.at_vertex(1));
        }
    }
}

TEST_CASE("hour-hand law: both axis endpoints read the time") {
    for (auto fam :
         {std::vector<int>{6}, {2, 3}, {6, 4}, {6, 4, 3}, {3, 3, 1, 3}}) {
        const auto t = tab(fam);
        const TimeOrderedIndex ix = time_ordered_index(t);
        const long r = t.r_l(1);
        for (long u = 0; u < 2 * r; ++u) {
            const Axis ax = axis_of_time(t, u);
            for (long e : {ax.anchor, mod(ax.anchor + r, 2 * r)}) {
                if (e % 2 == 0) {
                    // Axis endpoint at a vertex: twice its arrival index
                    // is the time.
                    CHECK(mod(2 * ix.at_vertex(e / 2) - u, r) == 0);
                } else {
                    // Axis endpoint at an edge midpoint: the two flanking
                    // arrival indices average to the time.
                    const long s = ix.at_vertex((e - 1) / 2) +
                                   ix.at_vertex((e + 1) / 2);
                    CHECK(mod(s - u, r) == 0);
                }
            }
        }
    }
}

TEST_CASE("corner formulas locate each flip's quadrilateral") {
    SUBCASE("goldens") {
        const auto t6 = tab({6});
        CHECK(quad_vertices(t6, 1, 2, 0) == qi(2, 1, -1, -2));
        CHECK(quad_vertices(t6, 1, 1, 1) == qi(2, 1, 0, -1));
        CHECK(quad_vertices(t6, 1, 4, 0) == qi(3, 2, -2, -3));
        const auto t64 = tab({6, 4});
        CHECK(quad_vertices(t64, 2, 1, 1) == qi(4, -2, 3, -3));
        CHECK(quad_vertices(t64, 2, 3, 1) == qi(10, 4, -3, -9));
        const auto t643 = tab({6, 4, 3});
        CHECK(quad_vertices(t643, 3, 1, 1) == qi(16, -9, 10, -15));
    }
    SUBCASE("rejects off-parity times and foreign streams") {
        const auto t6 = tab({6});
        CHECK_THROWS_AS(quad_vertices(t6, 1, 2, 1), NotInPlusClass);
        CHECK_THROWS_AS(quad_vertices(tab({6, 4}), 2, 1, 0), NotInPlusClass);
        CHECK_THROWS_AS(quad_vertices(t6, 2, 1, 0), RejectedInput);
        CHECK_THROWS_AS(quad_vertices(t6, 1, 5, 0), RejectedInput);
        CHECK_THROWS_AS(quad_vertices(t6, 1, 0, 0), RejectedInput);
        CHECK_THROWS_AS(quad_vertices(t6, 0, 1, 0), RejectedInput);
    }
    SUBCASE("role spacing, center sum, and shift laws") {
        for (auto fam : {std::vector<int>{6}, {2, 3}, {6, 4}, {2, 2, 1, 3},
                         {6, 4, 3}}) {
            const auto t = tab(fam);
            const long r = t.r_l(1);
            for (int a = 1; a <= t.F(); ++a) {
                const int top = (a == 1) ? t.n(1) - 2 : t.n(a);
                for (int m = 1; m <= top; ++m)
                    for (long u = -3; u < 2 * r + 3; ++u) {
                        if (!occurs_at(t, false, a, m, u)) {
                            CHECK_THROWS_AS(quad_vertices(t, a, m, u),
                                            NotInPlusClass);
                            continue;
                        }
                        const QuadIndices v = quad_vertices(t, a, m, u);
                        CHECK(v.alpha - v.beta == t.p_l(a));
                        CHECK(v.gamma - v.delta == t.p_l(a));
                        CHECK(v.alpha + v.delta == u);
                        CHECK(v.beta + v.gamma == u);
                        // Two time steps shift every corner by one.
                        const QuadIndices w = quad_vertices(t, a, m, u + 2);
                        CHECK(w == qi(v.alpha + 1, v.beta + 1, v.gamma + 1,
                                      v.delta + 1));
                        // Two index steps move the corner pairs apart by
                        // one copy width.
                        if (m + 2 <= top) {
                            const QuadIndices x =
                                quad_vertices(t, a, m + 2, u);
                            CHECK(x == qi(v.alpha + t.p_l(a),
                                          v.beta + t.p_l(a),
                                          v.gamma - t.p_l(a),
                                          v.delta - t.p_l(a)));
                        }
                    }
            }
        }
    }
}

TEST_CASE("cross-ratio algebra") {
    CHECK(cross_ratio(q(2), q(1), q(-1), q(-2)) == q(8));
    std::mt19937 rng(90u);
    std::uniform_int_distribution<int> d(-40, 40);
    for (int trial = 0; trial < 200; ++trial) {
        const mpq_class a(d(rng), 7), b(d(rng), 5), c(d(rng), 3),
            e(d(rng), 11);
        const std::set<mpq_class> distinct{a, b, c, e};
        if (distinct.size() < 4) continue;
        const mpq_class v = cross_ratio(a, b, c, e);
        if (v == 0) continue;
        CHECK(cross_ratio(a, e, c, b) == 1 / v);   // swap the end roles
        CHECK(cross_ratio(c, b, a, e) == 1 / v);   // swap the off roles
        CHECK(cross_ratio(c, e, a, b) == v);       // swap both pairs
    }
    CHECK_THROWS_AS(cross_ratio(q(1), q(1), q(2), q(3)), DivisionByZero);
    CHECK_THROWS_AS(cross_ratio(q(1), q(2), q(3), q(3)), DivisionByZero);
}

TEST_CASE("closed form reproduces every coefficient of the plain run") {
    SUBCASE("unit-spaced coordinates on the one-term family") {
        const auto t = tab({6});
        std::vector<mpq_class> w(7);
        std::iota(w.begin(), w.end(), 0);
        const CrossRatioReport rep = cross_ratio_check(t, w);
        CHECK(rep.occurrences_checked == 28);
        CHECK(rep.relation_instances == 40);
    }
    SUBCASE("random coordinates, three draws per family") {
        const auto t6 = tab({6});
        const auto t64 = tab({6, 4});
        const auto t643 = tab({6, 4, 3});
        for (unsigned seed : {2u, 9u, 55u}) {
            CHECK(cross_ratio_check(t6, seed).occurrences_checked == 28);
            CHECK(cross_ratio_check(t64, seed).occurrences_checked == 248);
            CHECK(cross_ratio_check(t643, seed).occurrences_checked == 1166);
        }
    }
    SUBCASE("other window shapes") {
        for (auto fam : {std::vector<int>{3}, {7}, {2, 3}, {3, 3}, {2, 3, 2},
                         {2, 2, 1, 3}}) {
            const auto t = tab(fam);
            const long r = t.r_l(1);
            long want = 0;
            for (int a = 1; a <= t.F(); ++a) want += t.n(a);
            const CrossRatioReport rep = cross_ratio_check(t, 11u);
            CHECK(rep.occurrences_checked == r * (want - 2));
        }
    }
    SUBCASE("rejects bad coordinate lists") {
        const auto t = tab({6});
        CHECK_THROWS_AS(
            cross_ratio_check(t, std::vector<mpq_class>{q(1), q(2)}),
            RejectedInput);
        CHECK_THROWS_AS(cross_ratio_check(t, std::vector<mpq_class>{
                                                 q(0), q(1), q(1), q(2), q(3),
                                                 q(4), q(5)}),
                        DegenerateZ);
        CHECK_THROWS_AS(cross_ratio_check(t, std::vector<mpq_class>{
                                                 q(0), q(2), q(1), q(3), q(4),
                                                 q(5), q(6)}),
                        RejectedInput);
    }
}
