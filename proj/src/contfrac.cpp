#include "ysys/contfrac.hpp"

#include <limits>
#include <sstream>

namespace ysys {

ContinuedFractionTable::ContinuedFractionTable(const InputSequence& seq) : n_(seq.n) {
    const int F = static_cast<int>(n_.size());
    if (F < 1) throw RejectedInput("input sequence is empty");
    if (n_[0] < 2) throw RejectedInput("n_1 must be at least 2");
    for (int a = 2; a <= F; ++a)
        if (n_[a - 1] < 1) throw RejectedInput("n_a must be at least 1 for a >= 2");
    if (F == 1 && n_[0] == 2)
        throw RejectedInput("the sequence (2) is excluded (empty system)");

    q_.resize(F);
    for (int k = 1; k <= F; ++k) {
        auto& row = q_[k - 1];
        row.resize(F - k + 2);
        row[0] = 1;        // q^(k)_{k-1}
        row[1] = n_[k - 1];  // q^(k)_k
        for (int a = k + 1; a <= F; ++a)
            row[a - k + 1] = n_[a - 1] * row[a - k] + row[a - k - 1];
    }
    r_.resize(F + 2);
    for (int k = 1; k <= F; ++k) r_[k - 1] = p(k, F) + q(k, F);
    r_[F] = 1;
    r_[F + 1] = 1;
}

const mpz_class& ContinuedFractionTable::q(int k, int a) const {
    if (k < 1 || k > F() || a < k - 1 || a > F())
        throw UnknownLabel("q(k,a) index out of range");
    return q_[k - 1][a - k + 1];
}

const mpz_class& ContinuedFractionTable::p(int k, int a) const {
    // p^(k)_a = q^(k)_{a-1}; a = F+1 gives the extension p_{F+1} = q_F.
    if (k < 1 || k > F() || a < k || a > F() + 1)
        throw UnknownLabel("p(k,a) index out of range");
    return q_[k - 1][a - k];
}

const mpz_class& ContinuedFractionTable::r(int k) const {
    if (k < 1 || k > F() + 2) throw UnknownLabel("r(k) index out of range");
    return r_[k - 1];
}

long ContinuedFractionTable::p_l(int a) const {
    if (!p(a).fits_slong_p()) throw DomainError("p_a does not fit in long");
    return p(a).get_si();
}

long ContinuedFractionTable::r_l(int k) const {
    if (!r(k).fits_slong_p()) throw DomainError("r(k) does not fit in long");
    return r(k).get_si();
}

long ContinuedFractionTable::max_p() const {
    mpz_class m = 0;
    for (int a = 1; a <= F(); ++a)
        if (p(a) > m) m = p(a);
    if (!m.fits_slong_p()) throw DomainError("max p_a does not fit in long");
    return m.get_si();
}

ContinuedFractionTable build_table(const InputSequence& seq) {
    return ContinuedFractionTable(seq);
}

namespace {

int pow_sign(int e) { return (((e % 2) + 2) % 2 == 0) ? +1 : -1; }

void check(ReportOfChecks& rep, const std::string& name, bool ok) {
    rep.entries.push_back({name, ok});
}

}  // namespace

ReportOfChecks verify_cf_identities(const ContinuedFractionTable& t) {
    ReportOfChecks rep;
    const int F = t.F();

    {  // recursion q^(k)_a = n_a q^(k)_{a-1} + q^(k)_{a-2}
        bool ok = true;
        for (int k = 1; k <= F; ++k) {
            ok = ok && (t.q(k, k - 1) == 1) && (t.q(k, k) == t.n(k));
            for (int a = k + 1; a <= F; ++a)
                ok = ok && (t.q(k, a) == t.n(a) * t.q(k, a - 1) + t.q(k, a - 2));
        }
        check(rep, "q-recursion", ok);
    }
    {  // r^(k) = p^(k)_F + q^(k)_F and backward recursion r^(k) = n_k r^(k+1) + r^(k+2)
        bool ok = true;
        for (int k = 1; k <= F; ++k) {
            ok = ok && (t.r(k) == t.p(k, F) + t.q(k, F));
            ok = ok && (t.r(k) == t.n(k) * t.r(k + 1) + t.r(k + 2));
        }
        ok = ok && (t.r(F + 1) == 1) && (t.r(F + 2) == 1);
        check(rep, "r-recursion", ok);
    }
    {  // determinant: q^(k)_a p^(k+1)_a - q^(k+1)_a p^(k)_a = (-1)^(a-k+1)
        bool ok = true;
        for (int k = 1; k < F; ++k)
            for (int a = k + 1; a <= F; ++a)
                ok = ok && (t.q(k, a) * t.p(k + 1, a) - t.q(k + 1, a) * t.p(k, a) ==
                            pow_sign(a - k + 1));
        check(rep, "determinant", ok);
    }
    {  // splitting: r^(k) = q^(k)_a r^(a+1) + p^(k)_a r^(a+2)
        bool ok = true;
        for (int k = 1; k <= F; ++k)
            for (int a = k; a <= F; ++a)
                ok = ok && (t.r(k) == t.q(k, a) * t.r(a + 1) + t.p(k, a) * t.r(a + 2));
        check(rep, "r-splitting", ok);
    }
    {  // coprimality: gcd(p^(k)_a, q^(k)_a) = 1, gcd(p_a, p^(2)_a) = 1, gcd(r, r^(2)) = 1
        bool ok = true;
        mpz_class g;
        for (int k = 1; k <= F; ++k)
            for (int a = k; a <= F; ++a) {
                mpz_gcd(g.get_mpz_t(), t.p(k, a).get_mpz_t(), t.q(k, a).get_mpz_t());
                ok = ok && (g == 1);
            }
        for (int a = 2; a <= F; ++a) {
            mpz_gcd(g.get_mpz_t(), t.p(1, a).get_mpz_t(), t.p(2, a).get_mpz_t());
            ok = ok && (g == 1);
        }
        if (F >= 2) {
            mpz_gcd(g.get_mpz_t(), t.r(1).get_mpz_t(), t.r(2).get_mpz_t());
            ok = ok && (g == 1);
        }
        check(rep, "coprimality", ok);
    }
    {  // p-determinant: p_{a-1} p^(2)_a - p_a p^(2)_{a-1} = (-1)^a, 3 <= a <= F
        bool ok = true;
        for (int a = 3; a <= F; ++a)
            ok = ok && (t.p(1, a - 1) * t.p(2, a) - t.p(1, a) * t.p(2, a - 1) ==
                        pow_sign(a));
        check(rep, "p-determinant", ok);
    }
    {  // alternating sum A_F = r^(2)/r   (r^(2) = 1 when F = 1)
        mpq_class lhs = alternating_sum(t);
        mpq_class rhs(t.r(2), t.r(1));
        rhs.canonicalize();
        check(rep, "alternating-sum", lhs == rhs);
    }
    return rep;
}

mpq_class alternating_sum(const ContinuedFractionTable& t) {
    const int F = t.F();
    mpq_class s = 0;
    for (int a = 1; a <= F - 1; ++a) {
        mpq_class term(mpz_class(pow_sign(a + 1)), mpz_class(t.p(1, a) * t.q(1, a)));
        term.canonicalize();
        s += term;
    }
    mpq_class last(mpz_class(pow_sign(F + 1)), mpz_class(t.p(1, F) * t.r(1)));
    last.canonicalize();
    s += last;
    s.canonicalize();
    return s;
}

}  // namespace ysys
