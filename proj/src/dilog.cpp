#include "ysys/dilog.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

namespace ysys {

namespace {

const double pi2_6 = 1.6449340668482264;

/** Power series of the classical dilogarithm, for 0 < z <= 1/2. */
double li2_series(double z) {
    double term = z, sum = z;
    for (int k = 2; k < 200; ++k) {
        term *= z;
        const double add =
            term / (static_cast<double>(k) * static_cast<double>(k));
        sum += add;
        if (add < sum * 1e-17) break;
    }
    return sum;
}

/** Classical dilogarithm on (0, 1), reflected into the series domain. */
double li2(double x) {
    if (x > 0.5) return pi2_6 - std::log(x) * std::log1p(-x) - li2_series(1.0 - x);
    return li2_series(x);
}

double pairwise_block(const double* a, size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += a[i];
        return s;
    }
    const size_t h = n / 2;
    return pairwise_block(a, h) + pairwise_block(a + h, n - h);
}

}  // namespace

// ===========================================================================
// Rogers dilogarithm
// ===========================================================================

double rogers_L(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("rogers_L: argument outside [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return pi2_6;
    return li2(x) + 0.5 * std::log(x) * std::log1p(-x);
}

// ===========================================================================
// Deterministic summation
// ===========================================================================

double pairwise_sum(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    constexpr size_t block = 256;
    const size_t nb = (xs.size() + block - 1) / block;
    std::vector<double> partial(nb, 0.0);
    const long nbl = static_cast<long>(nb);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < nbl; ++b) {
        const size_t lo = static_cast<size_t>(b) * block;
        const size_t hi = std::min(xs.size(), lo + block);
        partial[static_cast<size_t>(b)] = pairwise_block(xs.data() + lo, hi - lo);
    }
    return pairwise_block(partial.data(), partial.size());
}

double kahan_sum(const std::vector<double>& xs) {
    double s = 0.0, c = 0.0;
    for (const double x : xs) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

// ===========================================================================
// The identity check
// ===========================================================================

namespace {

void require(bool ok, const std::string& what, long got, long want) {
    if (ok) return;
    std::ostringstream os;
    os << what << ": counted " << got << ", closed form gives " << want;
    throw IdentityViolation(os.str());
}

}  // namespace

DilogReport dilog_identity_check(const ContinuedFractionTable& t,
                                 bool punctured, unsigned rng_seed) {
    const long r = t.r_l(1), r2 = t.r_l(2);
    const LabeledTriangulation g0 = punctured
                                        ? LabeledTriangulation::build_sg(t)
                                        : LabeledTriangulation::build_rsg(t);
    const MutationSchedule sched = derive_schedule(g0, t, punctured);
    const int n_labels = g0.size();

    std::mt19937 rng(rng_seed);
    std::vector<Float64Positive> yf;
    yf.reserve(static_cast<size_t>(n_labels));
    for (int i = 0; i < n_labels; ++i)
        yf.emplace_back(random_positive_rational(rng).get_d());
    const Trajectory<Float64Positive> trf = run(g0, sched, yf, 0L, 2 * r);

    std::vector<TropicalLaurent> yt;
    yt.reserve(static_cast<size_t>(n_labels));
    for (int i = 0; i < n_labels; ++i)
        yt.push_back(TropicalLaurent::unit(n_labels, i));
    const Trajectory<TropicalLaurent> trt = run(g0, sched, yt, 0L, 2 * r);

    DilogReport rep;
    rep.a_f = mpq_class(r2, r);
    rep.a_f.canonicalize();
    rep.n_plus_by_gen.assign(static_cast<size_t>(t.F()), 0);
    rep.n_minus_by_gen.assign(static_cast<size_t>(t.F()), 0);

    // Zip the two occurrence maps; they must agree on the flip pattern.
    std::vector<double> ys;
    ys.reserve(trf.occurrence_values.size());
    auto itf = trf.occurrence_values.begin();
    auto itt = trt.occurrence_values.begin();
    for (; itf != trf.occurrence_values.end() &&
           itt != trt.occurrence_values.end();
         ++itf, ++itt) {
        if (itf->first != itt->first)
            throw OccurrenceMismatch(
                "dilog_identity_check: float and tropical runs flip"
                " different occurrences");
        const auto [a, m, u] = itf->first;
        const std::vector<long>& c = itt->second.c;
        bool nonneg = true, nonpos = true, nonzero = false;
        for (const long e : c) {
            if (e > 0) nonpos = false;
            if (e < 0) nonneg = false;
            if (e != 0) nonzero = true;
        }
        if (!nonzero || (!nonneg && !nonpos)) {
            std::ostringstream os;
            os << "dilog_identity_check: c-vector of (" << a << "," << m
               << ") at u=" << u << " is not coherently signed";
            throw SignIncoherence(os.str());
        }
        if (nonneg) {
            ++rep.n_plus;
            ++rep.n_plus_by_gen[static_cast<size_t>(a - 1)];
        } else {
            ++rep.n_minus;
            ++rep.n_minus_by_gen[static_cast<size_t>(a - 1)];
        }
        ys.push_back(itf->second.v);
    }
    if (itf != trf.occurrence_values.end() ||
        itt != trt.occurrence_values.end())
        throw OccurrenceMismatch(
            "dilog_identity_check: float and tropical runs disagree on the"
            " occurrence count");
    rep.occurrences = static_cast<long>(ys.size());

    const long n_terms = rep.occurrences;
    std::vector<double> plus_terms(static_cast<size_t>(n_terms));
    std::vector<double> minus_terms(static_cast<size_t>(n_terms));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n_terms; ++i) {
        const double y = ys[static_cast<size_t>(i)];
        plus_terms[static_cast<size_t>(i)] = rogers_L(1.0 / (1.0 + y));
        minus_terms[static_cast<size_t>(i)] = rogers_L(y / (1.0 + y));
    }
    rep.s_plus = pairwise_sum(plus_terms) / pi2_6;
    rep.s_minus = pairwise_sum(minus_terms) / pi2_6;

    // Closed forms.
    long sum_even = 0, sum_odd = 0;
    for (int a = 1; a <= t.F(); ++a)
        (a % 2 == 0 ? sum_even : sum_odd) += t.n(a);
    if (punctured) {
        rep.m_plus = r * (sum_even + 1);
        rep.m_minus = r * sum_odd;
    } else {
        rep.m_plus = r * (sum_even + 2) - 6 * r2;
        rep.m_minus = r * (sum_odd - 4) + 6 * r2;
    }
    // The same totals through the partial-fraction invariant.
    {
        const mpq_class via_af =
            punctured ? mpq_class(r * (sum_even + 1))
                      : mpq_class(mpq_class(r) *
                                  (mpq_class(-6) * rep.a_f + sum_even + 2));
        require(via_af == rep.m_plus,
                "positive total via the invariant", rep.m_plus,
                static_cast<long>(via_af.get_num().get_si()));
    }

    const long occ_want = punctured ? r * (sum_even + sum_odd + 1)
                                    : r * (sum_even + sum_odd - 2);
    require(rep.occurrences == occ_want, "occurrence count",
            rep.occurrences, occ_want);
    require(rep.n_plus + rep.n_minus == rep.occurrences,
            "sign census total", rep.n_plus + rep.n_minus, rep.occurrences);
    require(rep.n_plus == rep.m_plus, "positive census", rep.n_plus,
            rep.m_plus);
    require(rep.n_minus == rep.m_minus, "negative census", rep.n_minus,
            rep.m_minus);
    if (std::abs(rep.s_plus - static_cast<double>(rep.m_plus)) > 1e-6 ||
        std::abs(rep.s_minus - static_cast<double>(rep.m_minus)) > 1e-6) {
        std::ostringstream os;
        os << "dilog_identity_check: analytic sums (" << rep.s_plus << ", "
           << rep.s_minus << ") miss the integer totals (" << rep.m_plus
           << ", " << rep.m_minus << ")";
        throw IdentityViolation(os.str());
    }

    // Per-generation refinement.
    for (int a = 1; a <= t.F(); ++a) {
        const long got_tot = rep.n_plus_by_gen[static_cast<size_t>(a - 1)] +
                             rep.n_minus_by_gen[static_cast<size_t>(a - 1)];
        const long want_tot =
            (a == 1) ? (punctured ? r * (t.n(1) + 1) : r * (t.n(1) - 2))
                     : r * t.n(a);
        require(got_tot == want_tot,
                "generation " + std::to_string(a) + " census total",
                got_tot, want_tot);
        if (a == 1) {
            const long o1 =
                punctured ? r + (t.r_l(2) - t.r_l(3)) * t.p_l(2)
                          : 2 * r - 6 * r2 + (t.r_l(2) - t.r_l(3)) * t.p_l(2);
            require(rep.n_plus_by_gen[0] == o1,
                    "generation 1 positive census", rep.n_plus_by_gen[0],
                    o1);
        } else {
            const long oa = (t.r_l(a) - t.r_l(a + 1)) * t.p_l(a) +
                            (t.r_l(a + 1) - t.r_l(a + 2)) * t.p_l(a + 1);
            const long got =
                (a % 2 == 1) ? rep.n_plus_by_gen[static_cast<size_t>(a - 1)]
                             : rep.n_minus_by_gen[static_cast<size_t>(a - 1)];
            require(got == oa,
                    "generation " + std::to_string(a) +
                        " distinguished-sign census",
                    got, oa);
        }
    }
    return rep;
}

}  // namespace ysys
