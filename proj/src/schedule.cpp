/**
 * Non-template half of the schedule module: the relabeling, the occurrence
 * parity, and the geometric derivation of the two base flip sets.
 *
 * Key design decisions.  The relabeling shift for generation a is the
 * second-row numerator q^(2)_{a-1} reduced modulo the copy count p_a; it is
 * computed with exact integers and reduced once, so arbitrarily long input
 * sequences cannot overflow.  The derivation routine trusts the geometry
 * (axis crossing minus axis symmetry) and then audits the result: the two
 * sets must be disjoint, their total size is pinned by the input sequence
 * alone, and within each set every pair must have a vanishing exchange
 * entry, which is exactly what makes the composite flip order-independent.
 */

#include "ysys/schedule.hpp"

namespace ysys {

Label advance_label(const ContinuedFractionTable& t, bool punctured,
                    const Label& l, long k) {
    if (l.a == 1) {
        if (punctured && (l.m == -1 || l.m == -2) && (k % 2 != 0))
            return Label{1, -3 - l.m, 1};  // the two tagged radii swap
        return l;
    }
    const long pa = t.p_l(l.a);
    const mpz_class sh_z = t.q(2, l.a - 1) % pa;
    const long sh = sh_z.get_si();
    long s = (l.s - 1 + k * sh) % pa;
    if (s < 0) s += pa;
    return Label{l.a, l.m, static_cast<int>(s + 1)};
}

long occurrence_parity(const ContinuedFractionTable& t, bool punctured,
                       int a, int m, long u) {
    if (punctured && a == 1) {
        if (m == -1 || m == -2) return u + 1;
        if (m == 0) return u;
    }
    return u + t.p_l(a + 1) - (t.n(a) - m) * t.p_l(a);
}

bool occurs_at(const ContinuedFractionTable& t, bool punctured,
               int a, int m, long u) {
    long th = occurrence_parity(t, punctured, a, m, u) % 2;
    return th == 0;
}

Axis MutationSchedule::axis_at(long u) const {
    return axis_of_time(*table, u);
}

std::vector<Label> MutationSchedule::labels_at(long u) const {
    const bool even = (u % 2 == 0);
    const std::vector<Label>& base = even ? s_0 : s_minus1;
    const long k = even ? u / 2 : (u + 1) / 2;
    std::vector<Label> out;
    out.reserve(base.size());
    for (const Label& l : base)
        out.push_back(advance_label(*table, punctured, l, k));
    std::sort(out.begin(), out.end());
    return out;
}

MutationSchedule derive_schedule(const LabeledTriangulation& g0,
                                 const ContinuedFractionTable& t,
                                 bool punctured) {
    MutationSchedule ms;
    ms.table = &t;
    ms.punctured = punctured;

    const ExchangeMatrix B = g0.exchange_matrix();
    auto collect = [&](long u) {
        const std::vector<int> idx = g0.axis_mutable(axis_of_time(t, u));
        detail::check_composite_free(B, idx, u);
        std::vector<Label> out;
        out.reserve(idx.size());
        for (int k : idx) out.push_back(g0.labels()[static_cast<size_t>(k)]);
        std::sort(out.begin(), out.end());
        return out;
    };
    ms.s_0 = collect(0);
    ms.s_minus1 = collect(-1);

    for (const Label& l : ms.s_0)
        if (std::binary_search(ms.s_minus1.begin(), ms.s_minus1.end(), l))
            throw CompatibilityFailure(
                "flip sets at times 0 and -1 share the label " + to_string(l));

    long want = punctured ? 1 : -2;
    for (int a = 1; a <= t.F(); ++a) want += t.n(a);
    if (static_cast<long>(ms.s_0.size() + ms.s_minus1.size()) != want)
        throw CompatibilityFailure(
            "flip sets have total size " +
            std::to_string(ms.s_0.size() + ms.s_minus1.size()) +
            " but the input sequence demands " + std::to_string(want));
    return ms;
}

}  // namespace ysys
