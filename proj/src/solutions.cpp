#include "ysys/solutions.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>

namespace ysys {

namespace {

long mod(long x, long m) { return ((x % m) + m) % m; }

}  // namespace

// ===========================================================================
// Time-ordered vertex indexing
// ===========================================================================

long TimeOrderedIndex::at_vertex(long v) const {
    return of_vertex[static_cast<size_t>(mod(v, r))];
}

long TimeOrderedIndex::vertex(long i) const {
    return vertex_of[static_cast<size_t>(mod(i, r))];
}

TimeOrderedIndex time_ordered_index(const ContinuedFractionTable& t) {
    TimeOrderedIndex ix;
    ix.r = t.r_l(1);
    const long r2 = t.r_l(2);
    ix.of_vertex.assign(static_cast<size_t>(ix.r), -1);
    ix.vertex_of.assign(static_cast<size_t>(ix.r), -1);
    long v = 0;
    for (long i = 0; i < ix.r; ++i) {
        if (ix.of_vertex[static_cast<size_t>(v)] >= 0)
            throw ClassificationFailure(
                "time_ordered_index: hour hand revisits vertex " +
                std::to_string(v) + " after " + std::to_string(i) + " steps");
        ix.vertex_of[static_cast<size_t>(i)] = v;
        ix.of_vertex[static_cast<size_t>(v)] = i;
        v = mod(v + r2, ix.r);
    }
    return ix;
}

// ===========================================================================
// Quadrilateral corner indices
// ===========================================================================

QuadIndices quad_vertices(const ContinuedFractionTable& t, int a, int m,
                          long u) {
    const int top = (a == 1) ? t.n(1) - 2 : (a >= 1 && a <= t.F()) ? t.n(a) : 0;
    if (a < 1 || a > t.F() || m < 1 || m > top)
        throw RejectedInput("quad_vertices: stream outside the plain index"
                            " set");
    if (occurrence_parity(t, false, a, m, u) % 2 != 0) {
        std::ostringstream os;
        os << "quad_vertices: (" << a << "," << m << ") is not flipped at u="
           << u;
        throw NotInPlusClass(os.str());
    }
    QuadIndices q;
    if (a == 1) {
        q.alpha = (u + m + 2) / 2;
        q.beta = (u + m) / 2;
        q.gamma = (u - m) / 2;
        q.delta = (u - m - 2) / 2;
    } else {
        const long big = t.p_l(a + 1), p = t.p_l(a);
        q.alpha = (u + big - (t.n(a) - m) * p) / 2;
        q.beta = (u + big - (t.n(a) + 2 - m) * p) / 2;
        q.gamma = (u - big + (t.n(a) + 2 - m) * p) / 2;
        q.delta = (u - big + (t.n(a) - m) * p) / 2;
    }
    return q;
}

// ===========================================================================
// Cross-ratios
// ===========================================================================

mpq_class cross_ratio(const mpq_class& alpha, const mpq_class& beta,
                      const mpq_class& gamma, const mpq_class& delta) {
    const mpq_class den((alpha - beta) * (gamma - delta));
    if (den == 0)
        throw DivisionByZero("cross_ratio: coincident corner coordinates");
    return mpq_class((alpha - delta) * (beta - gamma) / den);
}

// ===========================================================================
// The closed-form solution check
// ===========================================================================

CrossRatioReport cross_ratio_check(const ContinuedFractionTable& t,
                                   const std::vector<mpq_class>& w_by_vertex) {
    const long r = t.r_l(1);
    if (static_cast<long>(w_by_vertex.size()) != r)
        throw RejectedInput("cross_ratio_check: need one coordinate per"
                            " polygon vertex");
    for (size_t i = 0; i + 1 < w_by_vertex.size(); ++i) {
        if (w_by_vertex[i] == w_by_vertex[i + 1])
            throw DegenerateZ("cross_ratio_check: repeated coordinate at"
                              " vertices " + std::to_string(i) + " and " +
                              std::to_string(i + 1));
        if (w_by_vertex[i] > w_by_vertex[i + 1])
            throw RejectedInput("cross_ratio_check: coordinates must be"
                                " strictly increasing around the polygon");
    }

    const TimeOrderedIndex ix = time_ordered_index(t);
    const auto z = [&](long i) -> const mpq_class& {
        return w_by_vertex[static_cast<size_t>(ix.vertex(i))];
    };
    const auto formula = [&](int a, int m, long u) {
        const QuadIndices q = quad_vertices(t, a, m, u);
        mpq_class cr =
            cross_ratio(z(q.alpha), z(q.beta), z(q.gamma), z(q.delta));
        if (t.eps(a) < 0) cr = mpq_class(1 / cr);
        return cr;
    };

    CrossRatioReport rep;

    // -- layer 1: the closed form satisfies every additive relation -------
    const RelationSet rs = generate_relations(t, false);
    const long pad = 2 * t.max_p() + 2;
    std::map<OccurrenceKey, ExactPositiveRational> subst;
    for (const Relation& rel : rs.relations)
        for (long u = -pad; u < 2 * r + pad; ++u)
            if (occurs_at(t, false, rel.a, rel.m, u))
                subst.emplace(OccurrenceKey{rel.a, rel.m, u},
                              ExactPositiveRational(formula(rel.a, rel.m, u)));
    rep.relation_instances =
        detail::verify_relation_map(subst, -pad, 2 * r + pad, rs).instances;

    // -- layers 2 and 3: corner geometry and the seeded trajectory --------
    const LabeledTriangulation g0 = LabeledTriangulation::build_rsg(t);
    const MutationSchedule sched = derive_schedule(g0, t, false);
    std::vector<ExactPositiveRational> y0;
    y0.reserve(static_cast<size_t>(g0.size()));
    for (int k = 0; k < g0.size(); ++k) {
        const std::array<long, 4> c = g0.quadrilateral(k);
        // Corners are read against the ascending vertex direction (the
        // orientation layer 3 confirms); the reversed reading would invert
        // every seed value and derail the trajectory immediately.
        y0.emplace_back(cross_ratio(w_by_vertex[static_cast<size_t>(c[0])],
                                    w_by_vertex[static_cast<size_t>(c[3])],
                                    w_by_vertex[static_cast<size_t>(c[2])],
                                    w_by_vertex[static_cast<size_t>(c[1])]));
    }
    const Trajectory<ExactPositiveRational> tr =
        run(g0, sched, y0, 0L, 2 * r);

    std::map<OccurrenceKey, Label> who;
    for (const auto& [lab, times] : tr.mutation_times)
        for (long u : times) who.emplace(OccurrenceKey{lab.a, lab.m, u}, lab);

    for (const auto& [key, val] : tr.occurrence_values) {
        const auto [a, m, u] = key;
        const QuadIndices q = quad_vertices(t, a, m, u);
        const int k = g0.index_of(who.at(key));
        const std::array<long, 4> c = tr.gamma(u).quadrilateral(k);
        const std::set<long> ends{ix.at_vertex(c[1]), ix.at_vertex(c[3])};
        const std::set<long> offs{ix.at_vertex(c[0]), ix.at_vertex(c[2])};
        if (ends != std::set<long>{mod(q.beta, r), mod(q.delta, r)} ||
            offs != std::set<long>{mod(q.alpha, r), mod(q.gamma, r)}) {
            std::ostringstream os;
            os << "cross_ratio_check: corner indices of (" << a << "," << m
               << ") at u=" << u << " disagree with the formula";
            throw CompatibilityFailure(os.str());
        }
        const mpq_class want = formula(a, m, u);
        if (val.v != want) {
            std::ostringstream os;
            os << "cross_ratio_check: value of (" << a << "," << m
               << ") at u=" << u << " is " << val.v.get_str()
               << ", formula gives " << want.get_str();
            throw IdentityViolation(os.str());
        }
        ++rep.occurrences_checked;
    }
    return rep;
}

CrossRatioReport cross_ratio_check(const ContinuedFractionTable& t,
                                   unsigned rng_seed) {
    std::mt19937_64 rng(rng_seed);
    const long r = t.r_l(1);
    std::set<mpq_class> pool;
    while (static_cast<long>(pool.size()) < r)
        pool.insert(random_positive_rational(rng));
    return cross_ratio_check(
        t, std::vector<mpq_class>(pool.begin(), pool.end()));
}

}  // namespace ysys
