#include "doctest.h"

#include <random>

#include "ysys/contfrac.hpp"

using namespace ysys;

// ===========================================================================
// Frozen tables (independently computed with exact rational arithmetic)
// ===========================================================================

TEST_CASE("running example (6,4,3): full table") {
    ContinuedFractionTable t = build_table({{6, 4, 3}});
    REQUIRE(t.F() == 3);

    // first row: (p_a, q_a) = (1,6), (6,25), (25,81)
    CHECK(t.p(1) == 1);
    CHECK(t.q(1) == 6);
    CHECK(t.p(2) == 6);
    CHECK(t.q(2) == 25);
    CHECK(t.p(3) == 25);
    CHECK(t.q(3) == 81);
    CHECK(t.p(1, 4) == 81);  // extension p_{F+1} = q_F

    // second row: (p^(2)_2, q^(2)_2) = (1,4), (p^(2)_3, q^(2)_3) = (4,13)
    CHECK(t.p(2, 2) == 1);
    CHECK(t.q(2, 2) == 4);
    CHECK(t.p(2, 3) == 4);
    CHECK(t.q(2, 3) == 13);
    CHECK(t.p(2, 4) == 13);

    // third row
    CHECK(t.p(3, 3) == 1);
    CHECK(t.q(3, 3) == 3);
    CHECK(t.p(3, 4) == 3);

    // radii
    CHECK(t.r(1) == 106);
    CHECK(t.r(2) == 17);
    CHECK(t.r(3) == 4);
    CHECK(t.r(4) == 1);
    CHECK(t.r(5) == 1);

    // signs
    CHECK(t.eps(1) == 1);
    CHECK(t.eps(2) == -1);
    CHECK(t.eps(3) == 1);

    CHECK(verify_cf_identities(t).all_passed());
    CHECK(alternating_sum(t) == mpq_class(17, 106));
}

TEST_CASE("small tables") {
    ContinuedFractionTable t6 = build_table({{6}});
    CHECK(t6.p(1) == 1);
    CHECK(t6.q(1) == 6);
    CHECK(t6.r(1) == 7);
    CHECK(t6.r(2) == 1);
    CHECK(t6.r(3) == 1);
    CHECK(t6.p(1, 2) == 6);
    CHECK(alternating_sum(t6) == mpq_class(1, 7));

    ContinuedFractionTable t64 = build_table({{6, 4}});
    CHECK(t64.r(1) == 31);
    CHECK(t64.r(2) == 5);
    CHECK(t64.r(3) == 1);
    CHECK(t64.p(2) == 6);
    CHECK(t64.q(2) == 25);
    CHECK(t64.p(2, 2) == 1);
    CHECK(t64.q(2, 2) == 4);
    CHECK(alternating_sum(t64) == mpq_class(5, 31));

    // tadpole case (first generation empty downstream, table still fine)
    ContinuedFractionTable t23 = build_table({{2, 3}});
    CHECK(t23.r(1) == 9);
    CHECK(t23.r(2) == 4);
    CHECK(t23.p(2) == 2);
    CHECK(t23.q(2) == 7);
    CHECK(alternating_sum(t23) == mpq_class(4, 9));

    ContinuedFractionTable t7433 = build_table({{7, 4, 3, 3}});
    CHECK(t7433.r(1) == 405);
    CHECK(t7433.r(2) == 56);
    CHECK(t7433.r(3) == 13);
    CHECK(t7433.r(4) == 4);
    CHECK(t7433.q(4) == 311);
    CHECK(verify_cf_identities(t7433).all_passed());
}

TEST_CASE("spot identities on (6,4,3)") {
    ContinuedFractionTable t = build_table({{6, 4, 3}});
    // q_3 p^(2)_3 - q^(2)_3 p_3 = 81*4 - 13*25 = -1
    CHECK(t.q(1, 3) * t.p(2, 3) - t.q(2, 3) * t.p(1, 3) == -1);
    // p_2 p^(2)_3 - p_3 p^(2)_2 = 6*4 - 25*1 = -1
    CHECK(t.p(1, 2) * t.p(2, 3) - t.p(1, 3) * t.p(2, 2) == -1);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), t.r(1).get_mpz_t(), t.r(2).get_mpz_t());
    CHECK(g == 1);
}

// ===========================================================================
// Input validation
// ===========================================================================

TEST_CASE("rejected inputs") {
    CHECK_THROWS_AS(build_table({{}}), RejectedInput);
    CHECK_THROWS_AS(build_table({{1}}), RejectedInput);
    CHECK_THROWS_AS(build_table({{1, 3}}), RejectedInput);
    CHECK_THROWS_AS(build_table({{2}}), RejectedInput);        // excluded case
    CHECK_THROWS_AS(build_table({{6, 0}}), RejectedInput);
    CHECK_THROWS_AS(build_table({{6, 4, -1}}), RejectedInput);
    CHECK_NOTHROW(build_table({{2, 3}}));   // n_1 = 2 is fine for F >= 2
    CHECK_NOTHROW(build_table({{5, 1, 2}}));  // inner entries may be 1
}

// ===========================================================================
// Property sweep: identities hold for random sequences
// ===========================================================================

TEST_CASE("random sequences satisfy all identities") {
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<int> len(1, 6);
    std::uniform_int_distribution<int> head(2, 9);
    std::uniform_int_distribution<int> tail(1, 9);
    int done = 0;
    while (done < 100) {
        std::vector<int> n{head(rng)};
        int F = len(rng);
        for (int a = 2; a <= F; ++a) n.push_back(tail(rng));
        if (F == 1 && n[0] == 2) continue;
        ContinuedFractionTable t = build_table({n});
        ReportOfChecks rep = verify_cf_identities(t);
        if (!rep.all_passed()) {
            for (const auto& e : rep.entries) {
                INFO(e.name << ": " << (e.passed ? "ok" : "FAIL"));
            }
        }
        REQUIRE(rep.all_passed());
        mpq_class expect(t.r(2), t.r(1));
        expect.canonicalize();
        REQUIRE(alternating_sum(t) == expect);
        ++done;
    }
}
