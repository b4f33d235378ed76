#pragma once

/**
 * Seed mutation engine over pluggable semifields.
 *
 * The engine works on integer indices 0..N-1; the mapping between indices and
 * arc labels lives in the schedule layer.  A YSeed carries an exchange matrix
 * plus one coefficient per index and mutates by the exchange relation
 *
 *     y'_k = y_k^{-1},
 *     y'_i = y_i * y_k^{[b_ki]+} * (1 (+) y_k)^{-b_ki}      (i != k),
 *
 * where (+) is the semifield addition of the active value type.  An XSeed
 * carries coefficient-free cluster variables with the exchange
 *
 *     x'_k = (prod_i x_i^{[b_ik]+} + prod_i x_i^{[-b_ik]+}) / x_k.
 *
 * Key design decisions.  Value types are small structs with a fixed member
 * interface (times/over/inv/pow/one_plus) instead of a virtual hierarchy, so
 * exact, float and tropical runs compile to straight-line code.  The tropical
 * type stores the exponent vector of a Laurent monomial in the initial
 * variables; its addition is componentwise min, which makes the exponent
 * vectors c-vectors with no extra bookkeeping.  Composite mutations applied
 * by callers must use ascending index order; order independence on
 * mutation-compatible sets is asserted in tests, not at runtime.
 */

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include <gmpxx.h>

#include "ysys/errors.hpp"

namespace ysys {

inline long pos_part(long v) { return v > 0 ? v : 0; }

// ===========================================================================
// Exchange matrix
// ===========================================================================

class ExchangeMatrix {
  public:
    ExchangeMatrix() = default;
    explicit ExchangeMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n, 0) {}

    int size() const { return n_; }
    long at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, long v) { e_[static_cast<size_t>(i) * n_ + j] = v; }

    /// Adds b_ij += v, b_ji -= v (the only write pattern the builders need).
    void add_skew(int i, int j, long v) {
        e_[static_cast<size_t>(i) * n_ + j] += v;
        e_[static_cast<size_t>(j) * n_ + i] -= v;
    }

    bool is_skew_symmetric() const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (at(i, j) != -at(j, i)) return false;
        return true;
    }

    /// Standard matrix mutation at k.  Entries can grow roughly as products
    /// of entries; arithmetic is overflow-checked so wild-type growth fails
    /// loudly instead of silently wrapping.
    void mutate(int k) {
        if (k < 0 || k >= n_) throw UnknownLabel("mutate_matrix: index out of range");
        ExchangeMatrix old = *this;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                if (i == k || j == k) {
                    set(i, j, -old.at(i, j));
                    continue;
                }
                long up, down, v;
                if (__builtin_mul_overflow(pos_part(old.at(i, k)), pos_part(old.at(k, j)), &up) ||
                    __builtin_mul_overflow(pos_part(-old.at(i, k)), pos_part(-old.at(k, j)), &down) ||
                    __builtin_add_overflow(old.at(i, j), up - down, &v))
                    throw DomainError("exchange matrix entry overflow");
                set(i, j, v);
            }
        }
    }

    bool operator==(const ExchangeMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }
    bool operator!=(const ExchangeMatrix& o) const { return !(*this == o); }

  private:
    int n_ = 0;
    std::vector<long> e_;
};

inline ExchangeMatrix mutate_matrix(ExchangeMatrix B, int k) {
    B.mutate(k);
    return B;
}

// ===========================================================================
// Value types (semifield / field elements)
// ===========================================================================

/// Exact rational constrained to be > 0; semifield addition = field addition.
struct ExactPositiveRational {
    mpq_class v;

    ExactPositiveRational() : v(1) {}
    explicit ExactPositiveRational(mpq_class x) : v(std::move(x)) {
        if (v <= 0) throw DomainError("ExactPositiveRational requires a positive value");
    }

    ExactPositiveRational times(const ExactPositiveRational& o) const {
        return ExactPositiveRational(mpq_class(v * o.v));
    }
    ExactPositiveRational over(const ExactPositiveRational& o) const {
        return ExactPositiveRational(mpq_class(v / o.v));
    }
    ExactPositiveRational inv() const { return ExactPositiveRational(mpq_class(1 / v)); }
    ExactPositiveRational one_plus() const { return ExactPositiveRational(mpq_class(1 + v)); }
    ExactPositiveRational plus(const ExactPositiveRational& o) const {
        return ExactPositiveRational(mpq_class(v + o.v));
    }
    ExactPositiveRational pow(long e) const;
    bool operator==(const ExactPositiveRational& o) const { return v == o.v; }
};

/// Exact rational with no sign constraint (cross-ratio specializations).
struct ExactRational {
    mpq_class v;

    ExactRational() : v(1) {}
    explicit ExactRational(mpq_class x) : v(std::move(x)) {}

    ExactRational times(const ExactRational& o) const { return ExactRational(mpq_class(v * o.v)); }
    ExactRational over(const ExactRational& o) const {
        if (o.v == 0) throw DivisionByZero("exact rational division by zero");
        return ExactRational(mpq_class(v / o.v));
    }
    ExactRational inv() const {
        if (v == 0) throw DivisionByZero("exact rational inverse of zero");
        return ExactRational(mpq_class(1 / v));
    }
    ExactRational one_plus() const { return ExactRational(mpq_class(1 + v)); }
    ExactRational plus(const ExactRational& o) const { return ExactRational(mpq_class(v + o.v)); }
    ExactRational pow(long e) const;
    bool operator==(const ExactRational& o) const { return v == o.v; }
};

/// Positive double; semifield addition = float addition.
struct Float64Positive {
    double v = 1.0;

    Float64Positive() = default;
    explicit Float64Positive(double x) : v(x) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("Float64Positive requires a positive finite value");
    }

    Float64Positive times(const Float64Positive& o) const { return Float64Positive(v * o.v); }
    Float64Positive over(const Float64Positive& o) const { return Float64Positive(v / o.v); }
    Float64Positive inv() const { return Float64Positive(1.0 / v); }
    Float64Positive one_plus() const { return Float64Positive(1.0 + v); }
    Float64Positive plus(const Float64Positive& o) const { return Float64Positive(v + o.v); }
    Float64Positive pow(long e) const;
    bool operator==(const Float64Positive& o) const { return v == o.v; }
};

/// Laurent monomial in the initial variables; addition = componentwise min.
struct TropicalLaurent {
    std::vector<long> c;

    TropicalLaurent() = default;
    explicit TropicalLaurent(std::vector<long> e) : c(std::move(e)) {}
    static TropicalLaurent unit(int dim, int at) {
        std::vector<long> e(dim, 0);
        e[at] = 1;
        return TropicalLaurent(std::move(e));
    }

    TropicalLaurent times(const TropicalLaurent& o) const {
        TropicalLaurent r = *this;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += o.c[i];
        return r;
    }
    TropicalLaurent over(const TropicalLaurent& o) const {
        TropicalLaurent r = *this;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= o.c[i];
        return r;
    }
    TropicalLaurent inv() const {
        TropicalLaurent r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    /// 1 (+) this = componentwise min with the zero vector.
    TropicalLaurent one_plus() const {
        TropicalLaurent r = *this;
        for (auto& x : r.c) x = std::min(x, 0L);
        return r;
    }
    TropicalLaurent pow(long e) const {
        TropicalLaurent r = *this;
        for (auto& x : r.c) x *= e;
        return r;
    }
    bool operator==(const TropicalLaurent& o) const { return c == o.c; }
};

// ===========================================================================
// Seeds
// ===========================================================================

template <class S>
struct YSeed {
    ExchangeMatrix B;
    std::vector<S> y;

    void mutate(int k) {
        const int n = B.size();
        if (k < 0 || k >= n) throw UnknownLabel("mutate_y: index out of range");
        const S yk = y[k];
        const S opk = yk.one_plus();
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const long e = B.at(k, i);
            if (e == 0) continue;
            if (e > 0) y[i] = y[i].times(yk.pow(e));
            y[i] = y[i].times(opk.pow(-e));
        }
        y[k] = yk.inv();
        B.mutate(k);
    }
};

template <class S>
YSeed<S> mutate_y(YSeed<S> seed, int k) {
    seed.mutate(k);
    return seed;
}

template <class S>
struct XSeed {
    ExchangeMatrix B;
    std::vector<S> x;

    void mutate(int k) {
        const int n = B.size();
        if (k < 0 || k >= n) throw UnknownLabel("mutate_x: index out of range");
        S m_in = S();   // product over arrows into k
        S m_out = S();  // product over arrows out of k
        for (int i = 0; i < n; ++i) {
            const long e = B.at(i, k);
            if (e > 0) m_in = m_in.times(x[i].pow(e));
            if (e < 0) m_out = m_out.times(x[i].pow(-e));
        }
        x[k] = m_in.plus(m_out).over(x[k]);
        B.mutate(k);
    }
};

template <class S>
XSeed<S> mutate_x(XSeed<S> seed, int k) {
    seed.mutate(k);
    return seed;
}

// ===========================================================================
// c-vectors and tropical signs
// ===========================================================================

using CVector = std::vector<long>;

/// Initial tropical seed: y_i = the i-th generator.
inline YSeed<TropicalLaurent> tropical_seed(const ExchangeMatrix& B) {
    YSeed<TropicalLaurent> s;
    s.B = B;
    const int n = B.size();
    s.y.reserve(n);
    for (int i = 0; i < n; ++i) s.y.push_back(TropicalLaurent::unit(n, i));
    return s;
}

inline const CVector& c_vector(const YSeed<TropicalLaurent>& seed, int i) {
    return seed.y.at(i).c;
}

/// +1 if all components >= 0, -1 if all <= 0; SignIncoherence otherwise.
inline int tropical_sign(const CVector& c) {
    bool has_pos = false, has_neg = false;
    for (long x : c) {
        if (x > 0) has_pos = true;
        if (x < 0) has_neg = true;
    }
    if (has_pos && has_neg) throw SignIncoherence("c-vector has mixed signs");
    if (!has_pos && !has_neg) throw SignIncoherence("zero c-vector");
    return has_pos ? +1 : -1;
}

inline int tropical_sign(const YSeed<TropicalLaurent>& seed, int i) {
    return tropical_sign(c_vector(seed, i));
}

// ===========================================================================
// Inline implementations
// ===========================================================================

inline ExactPositiveRational ExactPositiveRational::pow(long e) const {
    if (e == 0) return ExactPositiveRational(mpq_class(1));
    const unsigned long a = static_cast<unsigned long>(std::labs(e));
    mpq_class r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(v.get_mpq_t()), a);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(v.get_mpq_t()), a);
    if (e < 0) r = 1 / r;
    return ExactPositiveRational(r);
}

inline ExactRational ExactRational::pow(long e) const {
    if (e == 0) return ExactRational(mpq_class(1));
    if (v == 0 && e < 0) throw DivisionByZero("zero to a negative power");
    const unsigned long a = static_cast<unsigned long>(std::labs(e));
    mpq_class r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(v.get_mpq_t()), a);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(v.get_mpq_t()), a);
    if (e < 0) r = 1 / r;
    return ExactRational(r);
}

inline Float64Positive Float64Positive::pow(long e) const {
    return Float64Positive(std::pow(v, static_cast<double>(e)));
}

/// Uniform random rational a/b with 1 <= a,b <= 50 (test seeding convention).
template <class Rng>
mpq_class random_positive_rational(Rng& rng) {
    const long a = 1 + static_cast<long>(rng() % 50);
    const long b = 1 + static_cast<long>(rng() % 50);
    mpq_class q(a, b);
    q.canonicalize();
    return q;
}

}  // namespace ysys
