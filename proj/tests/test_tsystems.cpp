#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ysys/contfrac.hpp"
#include "ysys/geometry.hpp"
#include "ysys/schedule.hpp"
#include "ysys/seeds.hpp"
#include "ysys/tsystems.hpp"
#include "ysys/ysystems.hpp"

using namespace ysys;

namespace {

ContinuedFractionTable tab(std::vector<int> n) {
    return build_table(InputSequence{std::move(n)});
}

TFactor tf(int b, int k, long delta) { return TFactor{b, k, delta}; }

std::vector<TFactor> sorted(std::vector<TFactor> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<ExactPositiveRational> rational_values(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<ExactPositiveRational> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        out.emplace_back(random_positive_rational(rng));
    return out;
}

XTrajectory<ExactPositiveRational> exact_x_run(
    const ContinuedFractionTable& t, bool punctured, long u_lo, long u_hi,
    unsigned seed) {
    const LabeledTriangulation g0 = punctured
                                        ? LabeledTriangulation::build_sg(t)
                                        : LabeledTriangulation::build_rsg(t);
    const MutationSchedule sched = derive_schedule(g0, t, punctured);
    return run_x<ExactPositiveRational>(
        g0, sched, rational_values(g0.size(), seed), u_lo, u_hi);
}

XTrajectory<ExactPositiveRational> ones_x_run(const ContinuedFractionTable& t,
                                              bool punctured, long u_lo,
                                              long u_hi) {
    const LabeledTriangulation g0 = punctured
                                        ? LabeledTriangulation::build_sg(t)
                                        : LabeledTriangulation::build_rsg(t);
    const MutationSchedule sched = derive_schedule(g0, t, punctured);
    std::vector<ExactPositiveRational> x0(
        static_cast<size_t>(g0.size()),
        ExactPositiveRational(mpq_class(1)));
    return run_x<ExactPositiveRational>(g0, sched, std::move(x0), u_lo,
                                        u_hi);
}

}  // namespace

// ===========================================================================
// Relation generation
// ===========================================================================

TEST_CASE("one-generation additive relations live on the bare chain") {
    const auto t = tab({6});
    const TRelationSet rs = generate_t_relations(t, false);
    REQUIRE(rs.relations.size() == 4);

    CHECK(rs.find(1, 1).p == 1);
    CHECK(rs.find(1, 1).mono1 == sorted({tf(1, 2, 0)}));
    CHECK(rs.find(1, 1).mono2.empty());
    CHECK(rs.find(1, 2).mono1 == sorted({tf(1, 1, 0), tf(1, 3, 0)}));
    CHECK(rs.find(1, 2).mono2.empty());
    CHECK(rs.find(1, 4).mono1 == sorted({tf(1, 3, 0)}));
    CHECK(rs.find(1, 4).mono2.empty());

    CHECK_THROWS_AS((void)rs.find(2, 1), UnknownLabel);
}

TEST_CASE("two-generation additive relations carry edge-shifted pairs") {
    const auto t = tab({6, 4});
    const TRelationSet rs = generate_t_relations(t, false);
    REQUIRE(rs.relations.size() == 8);

    CHECK(rs.find(1, 1).mono1 == sorted({tf(1, 2, 0), tf(2, 1, 0)}));
    CHECK(rs.find(1, 1).mono2 == sorted({tf(2, 1, -2), tf(2, 1, +2)}));
    CHECK(rs.find(1, 2).mono1 == sorted({tf(1, 1, 0), tf(1, 3, 0)}));
    CHECK(rs.find(1, 2).mono2 == sorted({tf(2, 1, -3), tf(2, 1, +3)}));
    CHECK(rs.find(1, 4).mono1 == sorted({tf(1, 3, 0)}));
    CHECK(rs.find(1, 4).mono2 == sorted({tf(2, 1, -5), tf(2, 1, +5)}));

    CHECK(rs.find(2, 1).p == 6);
    CHECK(rs.find(2, 1).mono1 == sorted({tf(1, 4, 0), tf(2, 2, 0)}));
    CHECK(rs.find(2, 1).mono2.empty());
    CHECK(rs.find(2, 4).mono1 == sorted({tf(2, 3, 0)}));
    CHECK(rs.find(2, 4).mono2.empty());
}

TEST_CASE("three-generation additive relations keep their next-edge pairs") {
    const auto t = tab({6, 4, 3});
    const TRelationSet rs = generate_t_relations(t, false);
    REQUIRE(rs.relations.size() == 11);

    CHECK(rs.find(1, 4).mono1 == sorted({tf(1, 3, 0), tf(3, 1, 0)}));
    CHECK(rs.find(1, 4).mono2 == sorted({tf(2, 1, -5), tf(2, 1, +5)}));

    CHECK(rs.find(2, 1).mono2 == sorted({tf(3, 1, -1), tf(3, 1, +1)}));
    CHECK(rs.find(2, 2).mono2 == sorted({tf(3, 1, -7), tf(3, 1, +7)}));
    CHECK(rs.find(2, 3).mono2 == sorted({tf(3, 1, -13), tf(3, 1, +13)}));
    CHECK(rs.find(2, 4).mono1 == sorted({tf(2, 3, 0)}));
    CHECK(rs.find(2, 4).mono2 == sorted({tf(3, 1, -19), tf(3, 1, +19)}));

    CHECK(rs.find(3, 1).p == 25);
    CHECK(rs.find(3, 1).mono1 == sorted({tf(2, 4, 0), tf(3, 2, 0)}));
    CHECK(rs.find(3, 1).mono2.empty());
    CHECK(rs.find(3, 3).mono1 == sorted({tf(3, 2, 0)}));
}

TEST_CASE("first entry 2 and punctured families resolve their edge cases") {
    {
        const TRelationSet rs = generate_t_relations(tab({2, 3}), false);
        REQUIRE(rs.relations.size() == 3);
        CHECK(rs.find(2, 1).mono1 == sorted({tf(2, 1, 0), tf(2, 2, 0)}));
        CHECK(rs.find(2, 1).mono2.empty());
        CHECK(rs.find(2, 3).mono1 == sorted({tf(2, 2, 0)}));
    }
    {
        const TRelationSet rs = generate_t_relations(tab({2, 3, 2}), false);
        CHECK(rs.find(2, 1).mono2 == sorted({tf(3, 1, -1), tf(3, 1, +1)}));
        CHECK(rs.find(2, 3).mono1 == sorted({tf(2, 2, 0)}));
        CHECK(rs.find(2, 3).mono2 == sorted({tf(3, 1, -5), tf(3, 1, +5)}));
        CHECK(rs.find(3, 1).mono1 == sorted({tf(2, 3, 0), tf(3, 2, 0)}));
    }
    {
        const TRelationSet rs = generate_t_relations(tab({6}), true);
        REQUIRE(rs.relations.size() == 7);
        CHECK(rs.find(1, -1).mono1 == sorted({tf(1, 0, 0)}));
        CHECK(rs.find(1, -1).mono2.empty());
        CHECK(rs.find(1, -2).mono1 == sorted({tf(1, 0, 0)}));
        CHECK(rs.find(1, 0).mono1 ==
              sorted({tf(1, -2, 0), tf(1, -1, 0), tf(1, 1, 0)}));
        CHECK(rs.find(1, 0).mono2.empty());
        CHECK(rs.find(1, 1).mono1 == sorted({tf(1, 0, 0), tf(1, 2, 0)}));
    }
    {
        const TRelationSet rs = generate_t_relations(tab({6, 4}), true);
        REQUIRE(rs.relations.size() == 11);
        CHECK(rs.find(1, -1).mono2 == sorted({tf(2, 1, 0)}));
        CHECK(rs.find(1, 0).mono2 == sorted({tf(2, 1, -1), tf(2, 1, +1)}));
        CHECK(rs.find(1, 1).mono2 == sorted({tf(2, 1, -2), tf(2, 1, +2)}));
        CHECK(rs.find(1, 4).mono2 == sorted({tf(2, 1, -5), tf(2, 1, +5)}));
        // Deeper generations match the plain family.
        const TRelationSet plain = generate_t_relations(tab({6, 4}), false);
        CHECK(rs.find(2, 1) == plain.find(2, 1));
        CHECK(rs.find(2, 4) == plain.find(2, 4));
    }
    {
        const TRelationSet rs = generate_t_relations(tab({2, 3}), true);
        REQUIRE(rs.relations.size() == 6);
        CHECK(rs.find(1, 0).mono1 == sorted({tf(1, -2, 0), tf(1, -1, 0)}));
        CHECK(rs.find(1, 0).mono2 == sorted({tf(2, 1, -1), tf(2, 1, +1)}));
        CHECK(rs.find(2, 1).mono1 == sorted({tf(1, 0, 0), tf(2, 2, 0)}));
        CHECK(rs.find(2, 1).mono2.empty());
    }
}

TEST_CASE("single-stream generations merge the bottom and top shapes") {
    // When a generation holds one stream, that stream is both the bottom
    // and the top of its chain; its adjacency monomial is the union of the
    // two factor lists, while the two candidate shifted monomials coincide.
    {
        const TRelationSet rs = generate_t_relations(tab({3, 3}), false);
        CHECK(rs.find(1, 1).p == 1);
        CHECK(rs.find(1, 1).mono1 == sorted({tf(2, 1, 0)}));
        CHECK(rs.find(1, 1).mono2 == sorted({tf(2, 1, -2), tf(2, 1, +2)}));
    }
    {
        const TRelationSet rs = generate_t_relations(tab({3, 3, 4}), false);
        CHECK(rs.find(1, 1).mono1 == sorted({tf(2, 1, 0), tf(3, 1, 0)}));
        CHECK(rs.find(1, 1).mono2 == sorted({tf(2, 1, -2), tf(2, 1, +2)}));
    }
    {
        // Punctured: the chain below still exists, so nothing merges.
        const TRelationSet rs = generate_t_relations(tab({3, 3}), true);
        CHECK(rs.find(1, 1).mono1 == sorted({tf(1, 0, 0)}));
        CHECK(rs.find(1, 1).mono2 == sorted({tf(2, 1, -2), tf(2, 1, +2)}));
    }
    {
        const TRelationSet rs = generate_t_relations(tab({4, 1, 3}), false);
        CHECK(rs.find(2, 1).p == 4);
        CHECK(rs.find(2, 1).mono1 == sorted({tf(1, 2, 0)}));
        CHECK(rs.find(2, 1).mono2 == sorted({tf(3, 1, -1), tf(3, 1, +1)}));
        CHECK(rs.find(2, 1) ==
              generate_t_relations(tab({4, 1, 3}), true).find(2, 1));
    }
    {
        const TRelationSet rs =
            generate_t_relations(tab({4, 1, 3, 2}), false);
        CHECK(rs.find(2, 1).mono1 == sorted({tf(1, 2, 0), tf(4, 1, 0)}));
        CHECK(rs.find(2, 1).mono2 == sorted({tf(3, 1, -1), tf(3, 1, +1)}));
    }
    {
        // The loop self-factor still joins the merged adjacency monomial.
        const TRelationSet rs = generate_t_relations(tab({2, 1, 3}), false);
        CHECK(rs.find(2, 1).p == 2);
        CHECK(rs.find(2, 1).mono1 == sorted({tf(2, 1, 0)}));
        CHECK(rs.find(2, 1).mono2 == sorted({tf(3, 1, -1), tf(3, 1, +1)}));
    }
    {
        const TRelationSet rs =
            generate_t_relations(tab({2, 2, 1, 3}), false);
        CHECK(rs.find(3, 1).p == 5);
        CHECK(rs.find(3, 1).mono1 == sorted({tf(2, 2, 0)}));
        CHECK(rs.find(3, 1).mono2 == sorted({tf(4, 1, -2), tf(4, 1, +2)}));
    }
}

TEST_CASE("additive relation sets are canonical and well-formed") {
    for (const auto& n : std::vector<std::vector<int>>{
             {3}, {6}, {7}, {2, 3}, {6, 4}, {6, 4, 3}, {3, 3}, {4, 1, 3},
             {2, 3, 2}}) {
        const auto t = tab(n);
        for (bool punctured : {false, true}) {
            if (punctured && t.F() == 1 && t.n(1) == 2) continue;
            const TRelationSet rs = generate_t_relations(t, punctured);
            const auto streams = stream_index_set(t, punctured);
            CHECK(rs.relations.size() == streams.size());
            const std::set<std::pair<int, int>> sset(streams.begin(),
                                                     streams.end());
            for (const TRelation& rel : rs.relations) {
                CHECK(sset.count({rel.a, rel.m}) == 1);
                CHECK(rel.p == t.p_l(rel.a));
                CHECK(std::is_sorted(rel.mono1.begin(), rel.mono1.end()));
                CHECK(std::is_sorted(rel.mono2.begin(), rel.mono2.end()));
                for (const auto* mono : {&rel.mono1, &rel.mono2})
                    for (const TFactor& f : *mono)
                        CHECK(sset.count({f.b, f.k}) == 1);
            }
            CHECK(generate_t_relations(t, punctured) == rs);
        }
    }
}

// ===========================================================================
// x-run identification sanity
// ===========================================================================

TEST_CASE("unit initialization mutates every arc to the value 2 first") {
    const auto t = tab({6});
    const auto xtr = ones_x_run(t, false, -2, 16);

    // Pre-flip values at each arc's first two flips: 1, then 2.
    CHECK(xtr.value_at(1, 2, 0).v == 1);
    CHECK(xtr.value_at(1, 4, 0).v == 1);
    CHECK(xtr.value_at(1, 1, 1).v == 1);
    CHECK(xtr.value_at(1, 3, 1).v == 1);
    CHECK(xtr.value_at(1, 2, 2).v == 2);
    CHECK(xtr.value_at(1, 4, 2).v == 2);

    CHECK(verify_t(xtr, generate_t_relations(t, false)).instances > 0);
}

// ===========================================================================
// Verification on exact runs
// ===========================================================================

TEST_CASE("exact runs satisfy the additive relations across families") {
    // The deliberately awkward shapes — single first-generation stream,
    // inner generation of size one, the loop, the punctured 2-head —
    // pin down the edge conventions of the generator.
    for (const auto& n : std::vector<std::vector<int>>{
             {3}, {6}, {7}, {2, 3}, {6, 4}, {3, 3}, {4, 1, 3}, {2, 3, 2},
             {3, 3, 4}, {4, 1, 3, 2}, {2, 1, 3}, {2, 2, 1, 3}}) {
        const auto t = tab(n);
        const auto xtr =
            exact_x_run(t, false, -2, 2 * t.r_l(1) + 2, 11);
        CHECK(verify_t(xtr, generate_t_relations(t, false)).instances > 0);
    }
    {
        const auto t = tab({6, 4, 3});
        const auto xtr = exact_x_run(t, false, -2, 120, 11);
        const TRelationReport rep =
            verify_t(xtr, generate_t_relations(t, false));
        CHECK(rep.instances > 0);
        for (const auto& [stream, count] : rep.per_stream) CHECK(count > 0);
    }
    for (const auto& n : std::vector<std::vector<int>>{
             {6}, {7}, {2, 3}, {3, 3}, {4, 1, 3}, {2, 2, 1, 3}}) {
        const auto t = tab(n);
        const auto xtr = exact_x_run(t, true, -2, 2 * t.r_l(1) + 2, 13);
        CHECK(verify_t(xtr, generate_t_relations(t, true)).instances > 0);
    }
    {
        const auto t = tab({6, 4});
        const auto xtr = exact_x_run(t, true, -2, 80, 13);
        CHECK(verify_t(xtr, generate_t_relations(t, true)).instances > 0);
    }
}

TEST_CASE("the half-turn flip symmetry holds for one-generation runs") {
    const auto t = tab({6});
    const auto xtr = exact_x_run(t, false, -2, 30, 19);
    for (int m = 1; m <= 4; ++m)
        for (long w = 0; w < 14; ++w) {
            if (!xtr.occurrence_values.count(OccurrenceKey{1, 5 - m, w}))
                continue;
            CHECK(xtr.value_at(1, m, w + 7).v ==
                  xtr.value_at(1, 5 - m, w).v);
        }
}

// ===========================================================================
// Periodicity
// ===========================================================================

TEST_CASE("additive systems inherit the coefficient periodicity") {
    {
        const auto t = tab({3});
        const PeriodReport rep =
            verify_t_periodicity(exact_x_run(t, false, 0, 10, 3));
        CHECK(rep.period == 4);
        CHECK(rep.refuted_divisors == std::vector<long>({1, 2}));
    }
    {
        const auto t = tab({6});
        const PeriodReport rep =
            verify_t_periodicity(exact_x_run(t, false, 0, 28, 3));
        CHECK(rep.period == 14);
        CHECK(rep.refuted_divisors == std::vector<long>({1, 2, 7}));
    }
    {
        const auto t = tab({6, 4});
        const PeriodReport rep =
            verify_t_periodicity(exact_x_run(t, false, 0, 124, 3));
        CHECK(rep.period == 62);
    }
    {
        const auto t = tab({6, 4, 3});
        const PeriodReport rep =
            verify_t_periodicity(exact_x_run(t, false, 0, 424, 3));
        CHECK(rep.period == 212);
    }
    {
        const auto t = tab({6});
        const PeriodReport rep =
            verify_t_periodicity(exact_x_run(t, true, 0, 56, 3));
        CHECK(rep.period == 28);
        CHECK(rep.half_swap);
    }
    {
        const auto t = tab({6, 4});
        const PeriodReport rep =
            verify_t_periodicity(exact_x_run(t, true, 0, 248, 3));
        CHECK(rep.period == 124);
        CHECK(rep.half_swap);
        CHECK(rep.refuted_divisors ==
              std::vector<long>({1, 2, 4, 31, 62}));
    }
}

// ===========================================================================
// Diagnostics
// ===========================================================================

TEST_CASE("additive verification rejects corrupted or mismatched input") {
    const auto t = tab({6});
    const TRelationSet rs = generate_t_relations(t, false);
    const auto xtr = exact_x_run(t, false, -2, 30, 5);

    {
        auto bad = xtr;
        auto& v = bad.occurrence_values.at(OccurrenceKey{1, 2, 2});
        v = v.times(ExactPositiveRational(mpq_class(2)));
        CHECK_THROWS_AS((void)verify_t(bad, rs), RelationViolation);
    }
    {
        auto bad = exact_x_run(t, false, 0, 28, 5);
        auto& v = bad.occurrence_values.at(OccurrenceKey{1, 1, 15});
        v = v.times(ExactPositiveRational(mpq_class(3)));
        CHECK_THROWS_AS((void)verify_t_periodicity(bad), PeriodicityViolation);
    }

    {
        const auto t64 = tab({6, 4});
        CHECK_THROWS_AS(
            (void)verify_t(exact_x_run(t64, false, -2, 8, 5),
                           generate_t_relations(t64, false)),
            WindowTooSmall);
    }
    CHECK_THROWS_AS(
        (void)verify_t_periodicity(exact_x_run(t, false, 0, 20, 5)),
        WindowTooSmall);
    CHECK_THROWS_AS((void)verify_t(xtr, generate_t_relations(t, true)),
                    RejectedInput);

    const LabeledTriangulation g0 = LabeledTriangulation::build_rsg(t);
    const MutationSchedule sched = derive_schedule(g0, t, false);
    CHECK_THROWS_AS((void)run_x<ExactPositiveRational>(
                        g0, sched, rational_values(g0.size(), 1), 2, 10),
                    WindowTooSmall);
    CHECK_THROWS_AS((void)run_x<ExactPositiveRational>(
                        g0, sched, rational_values(2, 1), -2, 10),
                    RejectedInput);
}
